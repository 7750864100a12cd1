#pragma once

// JSON encodings for params, systems, traces, and reports.  All exact values
// are encoded as strings ("p/q" for rationals, coefficient vectors for field
// elements) so every document round-trips losslessly; decimal approximations
// appear only as annotation fields never read back.  Every top-level document
// carries "schema_version".

#include <string>
#include <type_traits>
#include <vector>

#include "json.hpp"

#include "iis/cases.hpp"
#include "iis/engine.hpp"
#include "iis/numberfield.hpp"
#include "iis/system.hpp"
#include "iis/thin.hpp"

namespace iis {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// scalar values

inline json to_json(const Rational& v) { return v.str(); }

inline Rational rational_from_json(const json& j) { return Rational::parse(j.get<std::string>()); }

/// field elements: rational values stay strings — even when they live in a
// field, coordinates with no generator part don't need it — while the rest
// carry their coefficient vector (the field itself is described once per
// document)
inline json to_json(const NFElem& v) {
    if (!v.has_field()) return v.rational_value().str();
    auto coeffs = v.coeffs_in(*v.field());
    bool rational = true;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        if (coeffs[i].sign() != 0) rational = false;
    if (rational) return coeffs.empty() ? Rational(0).str() : coeffs[0].str();
    json arr = json::array();
    for (const auto& c : coeffs) arr.push_back(c.str());
    return json{{"coeffs", arr}};
}

inline json field_to_json(const NumberField& f) {
    json poly = json::array();
    for (const auto& c : f.minimal_poly().coeffs()) poly.push_back(c.get_str());
    auto iv = f.interval();
    return json{{"poly", poly}, {"interval", {iv.first.str(), iv.second.str()}}};
}

inline std::shared_ptr<const NumberField> field_from_json(const json& j) {
    std::vector<mpz_class> coeffs;
    for (const auto& c : j.at("poly")) coeffs.emplace_back(c.get<std::string>());
    IntPoly poly(std::move(coeffs));
    Rational lo = Rational::parse(j.at("interval").at(0).get<std::string>());
    Rational hi = Rational::parse(j.at("interval").at(1).get<std::string>());
    return std::make_shared<const NumberField>(AlgebraicReal(poly, lo, hi));
}

inline NFElem nfelem_from_json(const json& j, const std::shared_ptr<const NumberField>& fld) {
    if (j.is_string()) return NFElem(Rational::parse(j.get<std::string>()));
    if (!fld) throw std::invalid_argument("nfelem_from_json: field element without a field");
    NumberField::Coeffs coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.push_back(Rational::parse(c.get<std::string>()));
    return NFElem(fld, std::move(coeffs));
}

// the field shared by a parameter tuple's components, if any (documents over
// Q(lambda) embed it once at top level so they can be parsed back)
inline std::shared_ptr<const NumberField> field_of(const SymmetricParams<NFElem>& p) {
    for (const NFElem* v : {&p.a, &p.b, &p.c, &p.u})
        if (v->has_field()) return v->field();
    return nullptr;
}

inline std::shared_ptr<const NumberField> field_of(const SymmetricParams<Rational>&) {
    return nullptr;
}

namespace detail {

template <ExactOrderedField F>
F value_from_json(const json& j, const std::shared_ptr<const NumberField>& fld) {
    if constexpr (std::is_same_v<F, NFElem>) {
        return nfelem_from_json(j, fld);
    } else {
        (void)fld;
        return rational_from_json(j);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// params, systems, traces

template <ExactOrderedField F>
json params_to_json(const SymmetricParams<F>& p) {
    return json::array({to_json(p.a), to_json(p.b), to_json(p.c), to_json(p.u)});
}

template <ExactOrderedField F>
SymmetricParams<F> params_from_json(const json& j,
                                    const std::shared_ptr<const NumberField>& fld = nullptr) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("params_from_json: expected a 4-element array");
    return {detail::value_from_json<F>(j.at(0), fld), detail::value_from_json<F>(j.at(1), fld),
            detail::value_from_json<F>(j.at(2), fld), detail::value_from_json<F>(j.at(3), fld)};
}

template <ExactOrderedField F>
json interval_to_json(const Interval<F>& iv) {
    return json::array({to_json(iv.lo), to_json(iv.hi)});
}

template <ExactOrderedField F>
Interval<F> interval_from_json(const json& j,
                               const std::shared_ptr<const NumberField>& fld = nullptr) {
    return {detail::value_from_json<F>(j.at(0), fld), detail::value_from_json<F>(j.at(1), fld)};
}

template <ExactOrderedField F>
json system_to_json(const IISystem<F>& s) {
    json pairs = json::array();
    for (const auto& p : s.pairs)
        pairs.push_back(json{{"left", interval_to_json(p.left)},
                             {"right", interval_to_json(p.right)},
                             {"label", p.label}});
    return json{{"support", interval_to_json(s.support)}, {"pairs", pairs}};
}

template <ExactOrderedField F>
IISystem<F> system_from_json(const json& j,
                             const std::shared_ptr<const NumberField>& fld = nullptr) {
    IISystem<F> s{interval_from_json<F>(j.at("support"), fld), {}};
    for (const auto& jp : j.at("pairs"))
        s.pairs.push_back({interval_from_json<F>(jp.at("left"), fld),
                           interval_from_json<F>(jp.at("right"), fld),
                           jp.at("label").get<std::string>()});
    return s;
}

inline const char* outcome_name(InductionOutcome o) {
    switch (o) {
        case InductionOutcome::hole: return "hole";
        case InductionOutcome::symmetric: return "symmetric";
        case InductionOutcome::step_cap: return "step_cap";
        case InductionOutcome::degenerate: return "degenerate";
    }
    return "?";
}

template <ExactOrderedField F>
json step_to_json(const StepRecord<F>& r) {
    json j{{"kind", r.kind == StepKind::transmission ? "transmission" : "reduction"},
           {"side", r.side == Side::right ? "right" : "left"},
           {"moved_pair", r.moved_pair},
           {"along_pair", r.along_pair},
           {"moved_member", r.moved_member},
           {"support_after", interval_to_json(r.support_after)}};
    if (r.cut_point) j["cut_point"] = to_json(*r.cut_point);
    return j;
}

template <ExactOrderedField F>
StepRecord<F> step_from_json(const json& j,
                             const std::shared_ptr<const NumberField>& fld = nullptr) {
    StepRecord<F> r{j.at("kind").get<std::string>() == "transmission" ? StepKind::transmission
                                                                      : StepKind::reduction,
                    j.at("side").get<std::string>() == "right" ? Side::right : Side::left,
                    j.at("moved_pair").get<std::string>(),
                    j.at("along_pair").get<std::string>(),
                    j.at("moved_member").get<int>(),
                    std::nullopt,
                    interval_from_json<F>(j.at("support_after"), fld)};
    if (j.contains("cut_point")) r.cut_point = detail::value_from_json<F>(j.at("cut_point"), fld);
    return r;
}

template <ExactOrderedField F>
json trace_to_json(const InductionTrace<F>& t) {
    json steps = json::array();
    for (const auto& s : t.steps) steps.push_back(step_to_json(s));
    json j{{"initial", system_to_json(t.initial)},
           {"steps", steps},
           {"final", system_to_json(t.final_state)},
           {"outcome", outcome_name(t.outcome)}};
    if (!t.note.empty()) j["note"] = t.note;
    return j;
}

template <ExactOrderedField F>
InductionTrace<F> trace_from_json(const json& j,
                                  const std::shared_ptr<const NumberField>& fld = nullptr) {
    InductionTrace<F> t{system_from_json<F>(j.at("initial"), fld),
                        {},
                        system_from_json<F>(j.at("final"), fld),
                        InductionOutcome::step_cap,
                        j.value("note", std::string())};
    for (const auto& js : j.at("steps")) t.steps.push_back(step_from_json<F>(js, fld));
    std::string o = j.at("outcome").get<std::string>();
    if (o == "hole") t.outcome = InductionOutcome::hole;
    else if (o == "symmetric") t.outcome = InductionOutcome::symmetric;
    else if (o == "degenerate") t.outcome = InductionOutcome::degenerate;
    else if (o == "step_cap") t.outcome = InductionOutcome::step_cap;
    else throw std::invalid_argument("trace_from_json: unknown outcome " + o);
    return t;
}

// ---------------------------------------------------------------------------
// reports

inline json matrix_to_json(const TransitionMatrix& m) {
    json rows = json::array();
    for (const auto& row : m.entries) {
        json r = json::array();
        for (long e : row) r.push_back(e);
        rows.push_back(r);
    }
    return rows;
}

inline json label_to_json(const CaseLabel& label) {
    json j{{"index", label.index}};
    if (!label.branch.empty()) j["branch"] = label.branch;
    return j;
}

inline json counts_to_json(const CaseCounts& counts) {
    json j = json::object();
    if (counts.k) j["k"] = *counts.k;
    if (counts.n) j["n"] = *counts.n;
    if (counts.m) j["m"] = *counts.m;
    if (counts.x) j["x"] = *counts.x;
    if (counts.y) j["y"] = *counts.y;
    return j;
}

template <ExactOrderedField F>
json verify_report_to_json(const VerifyReport<F>& rep) {
    json j{{"schema_version", kSchemaVersion},
           {"params", params_to_json(rep.params)},
           {"case", label_to_json(rep.label)},
           {"counts", counts_to_json(rep.counts)},
           {"agree", rep.agree},
           {"generalized_iterations", rep.generalized_iterations},
           {"matrix_verdict", rep.matrix_verdict},
           {"engine_verdict", rep.engine_verdict}};
    j["matrix"] = rep.matrix ? matrix_to_json(*rep.matrix) : json();
    if (rep.matrix) j["matrix_tag"] = rep.matrix->tag;
    j["engine_params"] = rep.engine_params ? params_to_json(*rep.engine_params) : json();
    if (rep.matrix_params) j["matrix_params"] = params_to_json(*rep.matrix_params);
    if (!rep.anomalies.empty()) j["anomalies"] = rep.anomalies;
    return j;
}

template <ExactOrderedField F>
json thin_report_to_json(const ThinReport<F>& rep) {
    json supports = json::array(), approx = json::array();
    for (const auto& s : rep.support_lengths) {
        supports.push_back(to_json(s));
        approx.push_back(s.to_double());
    }
    json j{{"schema_version", kSchemaVersion},
           {"depth", rep.depth},
           {"support_lengths", supports},
           {"support_lengths_approx", approx},
           {"hole_found", rep.hole_found},
           {"stop_reason", rep.stop_reason}};
    j["self_similar_period"] = rep.self_similar_period ? json(*rep.self_similar_period) : json();
    j["scale_factor"] = rep.scale_factor ? to_json(*rep.scale_factor) : json();
    if (rep.scale_factor) j["scale_factor_approx"] = rep.scale_factor->to_double();
    return j;
}

}  // namespace iis
