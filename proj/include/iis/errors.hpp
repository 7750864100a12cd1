#pragma once

#include <stdexcept>
#include <string>

namespace iis {

// Raised when an exact tie or coincidence breaks the strict orderings the
// induction and classification rely on (tied carrier lengths, vanishing
// intervals, ambiguous layouts).  Callers treat it as "this input sits on a
// degenerate hyperplane", not as a bug.
struct DegenerateError : std::runtime_error {
    explicit DegenerateError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iis
