#include "iis/rational.hpp"

#include <cctype>
#include <ostream>

namespace iis {

Rational Rational::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
            throw std::invalid_argument("Rational::parse: bad character in '" + s + "'");
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("Rational::parse: malformed rational '" + s + "'");
    if (q.get_den() == 0)
        throw std::domain_error("Rational::parse: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace iis
