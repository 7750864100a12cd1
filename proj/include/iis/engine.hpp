#pragma once

// Executable Rauzy induction: transmissions, reductions, ordinary iterations,
// trace recording and replay, and grouping into generalized iterations.  This
// is the ground-truth oracle the matrix predictions are tested against.
//
// One ordinary iteration on the right:
//   while >= 2 intervals have right endpoint B:
//     carrier = the strictly longest B-ending interval,
//     transmit the shortest other B-ending interval along the carrier's pair
//   then reduce: with [c1, B] the unique B-covering interval and w the
//   rightmost critical point strictly inside it, the covering pair
//   [a1,b1] <-> [c1,B] becomes [a1, b1-B+w] <-> [c1,w], support [A,w].
//
// Left-side operations reflect the system about the original support, run the
// right-side code, and reflect back; the reflection is an exact involution.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "iis/errors.hpp"
#include "iis/system.hpp"

namespace iis {

enum class Side { left, right };
enum class StepKind { transmission, reduction };
enum class Member { left = 0, right = 1 };  // which stored interval of a pair

template <ExactOrderedField F>
struct StepRecord {
    StepKind kind;
    Side side;
    std::string moved_pair;      // transmissions: the moved pair; reductions: the cut pair
    std::string along_pair;      // transmissions only, else empty
    int moved_member;            // stored slot (0=left,1=right) of the moved/cut interval
    std::optional<F> cut_point;  // reductions only
    Interval<F> support_after;
};

enum class InductionOutcome { hole, symmetric, step_cap, degenerate };

template <ExactOrderedField F>
struct InductionTrace {
    IISystem<F> initial;
    std::vector<StepRecord<F>> steps;
    IISystem<F> final_state;
    InductionOutcome outcome;
    std::string note;  // degenerate reason, diagnostics
};

struct GeneralizedIteration {
    std::string reduced_pair;
    std::size_t step_begin, step_end;  // half-open range of step indices
};

enum class StopWhen { symmetric, hole_only };

// ---------------------------------------------------------------------------
// reflection about a fixed point sum k = A + B of the original support

template <ExactOrderedField F>
Interval<F> reflect_interval(const Interval<F>& iv, const F& k) {
    return {k - iv.hi, k - iv.lo};
}

template <ExactOrderedField F>
IISystem<F> reflect_system(const IISystem<F>& s, const F& k) {
    IISystem<F> out;
    out.support = reflect_interval(s.support, k);
    for (const auto& p : s.pairs)
        out.pairs.push_back(detail::make_pair(reflect_interval(p.left, k),
                                              reflect_interval(p.right, k), p.label));
    return out;
}

template <ExactOrderedField F>
StepRecord<F> reflect_record(const StepRecord<F>& r, const F& k) {
    StepRecord<F> out = r;
    out.side = r.side == Side::right ? Side::left : Side::right;
    // reflection reverses the stored order of each pair's two intervals
    out.moved_member = 1 - r.moved_member;
    if (r.cut_point) out.cut_point = k - *r.cut_point;
    out.support_after = reflect_interval(r.support_after, k);
    return out;
}

// ---------------------------------------------------------------------------
// elementary moves (right side)

namespace detail {

// affine image of iv under the identification of `along`; prefers the
// right->left direction when iv sits inside both intervals of the pair
template <ExactOrderedField F>
Interval<F> transmit_along(const Interval<F>& iv, const IdentificationPair<F>& along) {
    if (along.right.contains(iv)) return {along.to_left(iv.lo), along.to_left(iv.hi)};
    if (along.left.contains(iv)) return {along.to_right(iv.lo), along.to_right(iv.hi)};
    throw std::invalid_argument("transmission: containment violated");
}

template <ExactOrderedField F>
const Interval<F>& member_of(const IdentificationPair<F>& p, int m) {
    return m == 0 ? p.left : p.right;
}

// intervals whose right endpoint is exactly B, as (pair index, member slot)
template <ExactOrderedField F>
std::vector<std::pair<std::size_t, int>> right_enders(const IISystem<F>& s) {
    std::vector<std::pair<std::size_t, int>> out;
    for (std::size_t i = 0; i < s.pairs.size(); ++i)
        for (int m = 0; m < 2; ++m)
            if (member_of(s.pairs[i], m).hi == s.support.hi) out.push_back({i, m});
    return out;
}

// carrier (strictly longest) and moved (shortest) among the boundary
// intervals; any length tie between boundary intervals is degenerate
template <ExactOrderedField F>
std::pair<std::pair<std::size_t, int>, std::pair<std::size_t, int>> pick_admissible(
    const IISystem<F>& s, const std::vector<std::pair<std::size_t, int>>& enders) {
    auto len = [&](const std::pair<std::size_t, int>& e) {
        return member_of(s.pairs[e.first], e.second).length();
    };
    auto sorted = enders;
    std::sort(sorted.begin(), sorted.end(),
              [&](const auto& x, const auto& y) { return len(x) < len(y); });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (len(sorted[i]) == len(sorted[i + 1]))
            throw DegenerateError("tied boundary interval lengths");
    return {sorted.back(), sorted.front()};
}

}  // namespace detail

// replace the chosen interval of pair `moved` by its image under pair `along`
template <ExactOrderedField F>
IISystem<F> transmission(const IISystem<F>& s, std::size_t moved, Member member,
                         std::size_t along) {
    if (moved >= s.pairs.size() || along >= s.pairs.size() || moved == along)
        throw std::invalid_argument("transmission: bad pair index");
    const auto& mp = s.pairs[moved];
    Interval<F> iv = detail::member_of(mp, static_cast<int>(member));
    Interval<F> img = detail::transmit_along(iv, s.pairs[along]);
    Interval<F> other = detail::member_of(mp, 1 - static_cast<int>(member));
    IISystem<F> out = s;
    out.pairs[moved] = detail::make_pair(img, other, mp.label);
    return out;
}

// One admissible transmission on `side`.  With two or more boundary
// intervals, the shortest non-carrier boundary interval is moved (the rule
// the iteration loop uses).  With exactly one, any other interval contained
// in that carrier may be moved, shortest first; this standalone tier is never
// reached by rauzy_step, whose loop stops transmitting at one boundary
// interval.
template <ExactOrderedField F>
std::pair<IISystem<F>, StepRecord<F>> admissible_transmission(const IISystem<F>& s, Side side) {
    if (side == Side::left) {
        F k = s.support.lo + s.support.hi;
        auto [rs, rr] = admissible_transmission(reflect_system(s, k), Side::right);
        return {reflect_system(rs, k), reflect_record(rr, k)};
    }
    auto enders = detail::right_enders(s);
    if (enders.empty())
        throw std::invalid_argument("admissible_transmission: no interval reaches the boundary");
    std::pair<std::size_t, int> carrier, moved;
    if (enders.size() >= 2) {
        std::tie(carrier, moved) = detail::pick_admissible(s, enders);
    } else {
        carrier = enders.front();
        const Interval<F>& car = detail::member_of(s.pairs[carrier.first], carrier.second);
        std::optional<std::pair<std::size_t, int>> best;
        bool tie = false;
        for (std::size_t i = 0; i < s.pairs.size(); ++i)
            for (int m = 0; m < 2; ++m) {
                if (i == carrier.first) continue;
                const Interval<F>& iv = detail::member_of(s.pairs[i], m);
                if (!car.contains(iv)) continue;
                if (!best) {
                    best = {i, m};
                    continue;
                }
                const F bl = detail::member_of(s.pairs[best->first], best->second).length();
                if (iv.length() == bl)
                    tie = true;
                else if (iv.length() < bl) {
                    best = {i, m};
                    tie = false;
                }
            }
        if (!best)
            throw std::invalid_argument("admissible_transmission: nothing to transmit");
        if (tie) throw DegenerateError("tied contained interval lengths");
        moved = *best;
    }
    IISystem<F> out = transmission(s, moved.first, static_cast<Member>(moved.second),
                                   carrier.first);
    StepRecord<F> rec{StepKind::transmission,
                      Side::right,
                      s.pairs[moved.first].label,
                      s.pairs[carrier.first].label,
                      moved.second,
                      std::nullopt,
                      out.support};
    return {std::move(out), std::move(rec)};
}

// Cut at the rightmost critical point strictly inside the unique
// boundary-covering interval; shorten that pair and the support.
template <ExactOrderedField F>
std::pair<IISystem<F>, StepRecord<F>> reduction(const IISystem<F>& s, Side side) {
    if (side == Side::left) {
        F k = s.support.lo + s.support.hi;
        auto [rs, rr] = reduction(reflect_system(s, k), Side::right);
        return {reflect_system(rs, k), reflect_record(rr, k)};
    }
    auto enders = detail::right_enders(s);
    if (enders.size() != 1)
        throw std::invalid_argument("reduction: boundary must be covered by exactly one interval");
    auto [ci, cm] = enders.front();
    const auto& pair = s.pairs[ci];
    const F B = s.support.hi;
    const F c1 = detail::member_of(pair, cm).lo;
    std::optional<F> w;
    for (const auto& p : s.pairs)
        for (const Interval<F>* iv : {&p.left, &p.right})
            for (const F* e : {&iv->lo, &iv->hi})
                if (c1 < *e && *e < B && (!w || *w < *e)) w = *e;
    if (!w) throw DegenerateError("no interior critical point");
    Interval<F> cov{c1, *w};
    const Interval<F>& other = detail::member_of(pair, 1 - cm);
    Interval<F> shrunk{other.lo, other.hi - B + *w};
    IISystem<F> out = s;
    out.support = {s.support.lo, *w};
    out.pairs[ci] = detail::make_pair(cov, shrunk, pair.label);
    for (const auto& p : out.pairs)
        if (!(out.support.contains(p.left) && out.support.contains(p.right)))
            throw std::logic_error("reduction: interval escaped the cut support");
    StepRecord<F> rec{StepKind::reduction, Side::right, pair.label, "", cm, *w, out.support};
    return {std::move(out), std::move(rec)};
}

namespace detail {

template <ExactOrderedField F>
struct OrdinaryStep {
    IISystem<F> sys;
    std::vector<StepRecord<F>> steps;
    std::vector<Interval<F>> transmitted;  // final positions of intervals moved here
};

// one full ordinary iteration on the right (caller has checked for holes)
template <ExactOrderedField F>
OrdinaryStep<F> rauzy_step_right(IISystem<F> cur) {
    OrdinaryStep<F> out;
    for (;;) {
        auto enders = right_enders(cur);
        if (enders.size() < 2) break;
        auto [carrier, moved] = pick_admissible(cur, enders);
        const auto& mp = cur.pairs[moved.first];
        Interval<F> img =
            transmit_along(member_of(mp, moved.second), cur.pairs[carrier.first]);
        out.steps.push_back({StepKind::transmission, Side::right, mp.label,
                             cur.pairs[carrier.first].label, moved.second, std::nullopt,
                             cur.support});
        out.transmitted.push_back(img);
        cur.pairs[moved.first] =
            make_pair(img, member_of(mp, 1 - moved.second), mp.label);
    }
    auto [next, rec] = reduction(cur, Side::right);
    out.steps.push_back(std::move(rec));
    out.sys = std::move(next);
    return out;
}

}  // namespace detail

// one ordinary iteration (transmissions + one reduction) on `side`
template <ExactOrderedField F>
std::pair<IISystem<F>, std::vector<StepRecord<F>>> rauzy_step(const IISystem<F>& s, Side side) {
    if (side == Side::left) {
        F k = s.support.lo + s.support.hi;
        auto [rs, recs] = rauzy_step(reflect_system(s, k), Side::right);
        std::vector<StepRecord<F>> back;
        back.reserve(recs.size());
        for (const auto& r : recs) back.push_back(reflect_record(r, k));
        return {reflect_system(rs, k), std::move(back)};
    }
    auto step = detail::rauzy_step_right(s);
    return {std::move(step.sys), std::move(step.steps)};
}

// ---------------------------------------------------------------------------
// stop rule: transmission-equivalence to the special symmetric shape
//
// A balanced state with two boundary pairs of distinct lengths and one
// interior pair stops the induction when the interior pair either already
// sits in the special symmetric layout, or can be brought there by leftward
// shifts along the just-reduced boundary pair (each interior interval shifted
// at most once, and only if it was not transmitted during the current
// iteration), with a UNIQUE resulting parameter tuple.  Zero candidate
// layouts or several distinct ones mean the induction simply continues.

namespace detail {

template <ExactOrderedField F>
struct StopPlan {
    SymmetricParams<F> params;
    bool ambiguous;
    bool shift[2];         // interior pair's stored members to shift left
    std::string carrier;   // boundary pair to shift along (the reduced pair)
};

template <ExactOrderedField F>
std::optional<StopPlan<F>> stop_plan(const IISystem<F>& s,
                                     const std::vector<Interval<F>>& transmitted,
                                     const std::string& reduced_label) {
    if (s.order() != 3 || !is_balanced(s)) return std::nullopt;
    const F A = s.support.lo, B = s.support.hi;
    std::vector<std::size_t> boundary, interior;
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        const auto& p = s.pairs[i];
        if (p.left.lo == A && p.right.hi == B)
            boundary.push_back(i);
        else
            interior.push_back(i);
    }
    if (boundary.size() != 2 || interior.size() != 1) return std::nullopt;
    F la = s.pairs[boundary[0]].length(), lb = s.pairs[boundary[1]].length();
    if (la == lb) return std::nullopt;  // tie: not this stop rule's business
    F a = max(la, lb), b = min(la, lb);
    const auto& cp = s.pairs[interior[0]];
    F c = cp.length();
    if (!(a + b + c == B - A)) return std::nullopt;
    auto accept = [&](const F& x, const F& y) -> std::optional<SymmetricParams<F>> {
        if (!((x - A) + (y - A) == a + b)) return std::nullopt;
        F u = min(x, y) - A;
        if (!(F(0) < u && u < a + b - u)) return std::nullopt;
        return SymmetricParams<F>{a, b, c, u};
    };
    // literal special symmetric layout: no shifts needed
    if (auto p = accept(cp.left.lo, cp.right.lo))
        return StopPlan<F>{*p, false, {false, false}, ""};
    // shifts along the just-reduced boundary pair only
    const IdentificationPair<F>* car = nullptr;
    for (auto bi : boundary)
        if (s.pairs[bi].label == reduced_label) car = &s.pairs[bi];
    if (!car) return std::nullopt;
    F off = car->right.lo - A;
    if (!(off.sign() > 0)) return std::nullopt;
    auto untouched = [&](const Interval<F>& iv) {
        for (const auto& t : transmitted)
            if (t == iv) return false;
        return true;
    };
    const Interval<F>* ivs[2] = {&cp.left, &cp.right};
    std::optional<StopPlan<F>> found;
    bool ambiguous = false;
    for (int s0 = 0; s0 < 2; ++s0)
        for (int s1 = 0; s1 < 2; ++s1) {
            if (s0 && !(untouched(*ivs[0]) && car->right.contains(*ivs[0]))) continue;
            if (s1 && !(untouched(*ivs[1]) && car->right.contains(*ivs[1]))) continue;
            F x = s0 ? ivs[0]->lo - off : ivs[0]->lo;
            F y = s1 ? ivs[1]->lo - off : ivs[1]->lo;
            auto p = accept(x, y);
            if (!p) continue;
            if (!found)
                found = StopPlan<F>{*p, false, {s0 != 0, s1 != 0}, car->label};
            else if (!(found->params == *p))
                ambiguous = true;
        }
    if (!found) return std::nullopt;
    found->ambiguous = ambiguous;
    return found;
}

// apply the plan's shifts as recorded transmissions and re-canonicalize
template <ExactOrderedField F>
std::pair<IISystem<F>, std::vector<StepRecord<F>>> apply_stop_plan(IISystem<F> s,
                                                                   const StopPlan<F>& plan) {
    std::vector<StepRecord<F>> recs;
    if (!(plan.shift[0] || plan.shift[1])) return {std::move(s), std::move(recs)};
    const F A = s.support.lo, B = s.support.hi;
    std::size_t ii = s.pairs.size(), ci = s.pairs.size();
    for (std::size_t i = 0; i < s.pairs.size(); ++i) {
        if (s.pairs[i].label == plan.carrier) ci = i;
        if (!(s.pairs[i].left.lo == A && s.pairs[i].right.hi == B)) ii = i;
    }
    if (ii >= s.pairs.size() || ci >= s.pairs.size())
        throw std::logic_error("stop plan: pairs moved out from under us");
    // shift the stored-left member first; it only moves further left, so the
    // stored order stays valid until the single re-canonicalization per move
    for (int m = 0; m < 2; ++m) {
        if (!plan.shift[m]) continue;
        recs.push_back({StepKind::transmission, Side::right, s.pairs[ii].label,
                        plan.carrier, m, std::nullopt, s.support});
        s = transmission(s, ii, static_cast<Member>(m), ci);
    }
    return {std::move(s), std::move(recs)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// full induction runs

template <ExactOrderedField F>
InductionTrace<F> run_induction(const IISystem<F>& s, Side side, long max_ordinary_steps = 2000,
                                StopWhen stop_when = StopWhen::symmetric) {
    if (side == Side::left) {
        F k = s.support.lo + s.support.hi;
        InductionTrace<F> rt =
            run_induction(reflect_system(s, k), Side::right, max_ordinary_steps, stop_when);
        InductionTrace<F> out;
        out.initial = s;
        out.final_state = reflect_system(rt.final_state, k);
        out.outcome = rt.outcome;
        out.note = std::move(rt.note);
        out.steps.reserve(rt.steps.size());
        for (const auto& r : rt.steps) out.steps.push_back(reflect_record(r, k));
        return out;
    }
    InductionTrace<F> trace;
    trace.initial = s;
    IISystem<F> cur = s;
    long n = 0;
    for (;;) {
        if (!coverage_gaps(cur).empty()) {
            trace.outcome = InductionOutcome::hole;
            break;
        }
        if (n >= max_ordinary_steps) {
            trace.outcome = InductionOutcome::step_cap;
            break;
        }
        detail::OrdinaryStep<F> step;
        try {
            step = detail::rauzy_step_right(cur);
        } catch (const DegenerateError& e) {
            trace.outcome = InductionOutcome::degenerate;
            trace.note = e.what();
            break;
        }
        cur = std::move(step.sys);
        trace.steps.insert(trace.steps.end(), step.steps.begin(), step.steps.end());
        ++n;
        if (stop_when != StopWhen::symmetric) continue;
        const std::string& reduced = trace.steps.back().moved_pair;
        auto plan = detail::stop_plan(cur, step.transmitted, reduced);
        if (plan && !plan->ambiguous) {
            auto [normed, recs] = detail::apply_stop_plan(std::move(cur), *plan);
            cur = std::move(normed);
            trace.steps.insert(trace.steps.end(), recs.begin(), recs.end());
            if (!(params_of(cur) == plan->params))
                throw std::logic_error("stop plan: applied shifts disagree with parameters");
            trace.outcome = InductionOutcome::symmetric;
            break;
        }
    }
    trace.final_state = std::move(cur);
    return trace;
}

// maximal runs of consecutive ordinary iterations whose reductions hit the
// same pair; trailing normalization transmissions join the last group
template <ExactOrderedField F>
std::vector<GeneralizedIteration> group_generalized(const InductionTrace<F>& t) {
    std::vector<GeneralizedIteration> out;
    std::size_t seg_begin = 0;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        if (t.steps[i].kind != StepKind::reduction) continue;
        const std::string& lab = t.steps[i].moved_pair;
        if (out.empty() || out.back().reduced_pair != lab)
            out.push_back({lab, seg_begin, i + 1});
        else
            out.back().step_end = i + 1;
        seg_begin = i + 1;
    }
    if (!out.empty()) out.back().step_end = t.steps.size();
    return out;
}

// ---------------------------------------------------------------------------
// replay: re-apply a trace's records from its initial system

template <ExactOrderedField F>
IISystem<F> apply_record(const IISystem<F>& s, const StepRecord<F>& rec, const F& k) {
    if (rec.side == Side::left)
        return reflect_system(apply_record(reflect_system(s, k), reflect_record(rec, k), k), k);
    auto index_of = [&](const std::string& label) {
        for (std::size_t i = 0; i < s.pairs.size(); ++i)
            if (s.pairs[i].label == label) return i;
        throw std::invalid_argument("replay: unknown pair label " + label);
    };
    std::size_t mi = index_of(rec.moved_pair);
    if (rec.kind == StepKind::transmission)
        return transmission(s, mi, static_cast<Member>(rec.moved_member), index_of(rec.along_pair));
    // reduction
    if (!rec.cut_point) throw std::invalid_argument("replay: reduction without cut point");
    const F& w = *rec.cut_point;
    const auto& pair = s.pairs[mi];
    const Interval<F>& covm = detail::member_of(pair, rec.moved_member);
    if (!(covm.hi == s.support.hi))
        throw std::invalid_argument("replay: recorded interval does not reach the boundary");
    Interval<F> cov{covm.lo, w};
    const Interval<F>& other = detail::member_of(pair, 1 - rec.moved_member);
    Interval<F> shrunk{other.lo, other.hi - s.support.hi + w};
    IISystem<F> out = s;
    out.support = {s.support.lo, w};
    out.pairs[mi] = detail::make_pair(cov, shrunk, pair.label);
    return out;
}

// true iff replaying the steps from trace.initial reproduces trace.final_state
// bit-exactly (and every recorded support along the way)
template <ExactOrderedField F>
bool replay_matches(const InductionTrace<F>& t) {
    auto equal_sys = [](const IISystem<F>& x, const IISystem<F>& y) {
        if (!(x.support == y.support) || x.pairs.size() != y.pairs.size()) return false;
        for (std::size_t i = 0; i < x.pairs.size(); ++i)
            if (!(x.pairs[i].left == y.pairs[i].left && x.pairs[i].right == y.pairs[i].right &&
                  x.pairs[i].label == y.pairs[i].label))
                return false;
        return true;
    };
    F k = t.initial.support.lo + t.initial.support.hi;
    IISystem<F> cur = t.initial;
    for (const auto& rec : t.steps) {
        cur = apply_record(cur, rec, k);
        if (!(cur.support == rec.support_after)) return false;
    }
    return equal_sys(cur, t.final_state);
}

}  // namespace iis
