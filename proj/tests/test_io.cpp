#include "doctest.h"

#include <string>

#include "iis/json_io.hpp"
#include "iis/render.hpp"
#include "iis/thin.hpp"

using namespace iis;

static SymmetricParams<Rational> P10412() {
    return {Rational(10), Rational(4), Rational(1), Rational(2)};
}

TEST_CASE("rational documents round-trip bit-exactly") {
    auto p = P10412();
    CHECK(params_from_json<Rational>(params_to_json(p)) == p);

    auto sys = build_special_symmetric(p);
    CHECK(system_to_json(system_from_json<Rational>(system_to_json(sys))) == system_to_json(sys));

    auto trace = run_induction(sys, Side::right);
    json jt = trace_to_json(trace);
    auto trace2 = trace_from_json<Rational>(jt);
    CHECK(trace_to_json(trace2) == jt);
    CHECK(replay_matches(trace2));
}

TEST_CASE("field documents embed the field and round-trip") {
    auto p = thin_eigen_params();
    auto fld = field_of(p);
    REQUIRE(fld);

    json jfield = field_to_json(*fld);
    auto fld2 = field_from_json(jfield);
    CHECK(field_to_json(*fld2) == jfield);

    json jp = params_to_json(p);
    auto p2 = params_from_json<NFElem>(jp, fld2);
    CHECK(params_to_json(p2) == jp);
    // parsed values are exactly equal as field elements
    CHECK(p2.a == NFElem(fld2, p.a.coeffs_in(*fld)));

    auto trace = run_induction(build_special_symmetric(p), Side::right);
    json jt = trace_to_json(trace);
    auto trace2 = trace_from_json<NFElem>(jt, fld2);
    CHECK(trace_to_json(trace2) == jt);
}

TEST_CASE("mixed rational values inside field documents stay plain strings") {
    NFElem r(Rational(3, 7));
    json j = to_json(r);
    CHECK(j.is_string());
    CHECK(nfelem_from_json(j, nullptr).rational_value() == Rational(3, 7));
}

TEST_CASE("verify report carries the documented keys") {
    auto rep = verify_symmetrization(P10412());
    json j = verify_report_to_json(rep);
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("case").at("index") == 1);
    CHECK(j.at("agree") == true);
    CHECK(j.at("matrix").size() == 4);
    CHECK(j.at("matrix_tag") == "A1");
    CHECK(params_from_json<Rational>(j.at("engine_params")) ==
          SymmetricParams<Rational>{Rational(5), Rational(4), Rational(1), Rational(2)});
    CHECK(j.at("generalized_iterations") == 1);
}

TEST_CASE("thin report serializes exact values plus approximations") {
    auto rep = thin_scan(thin_eigen_params(), 12, NFElem(Rational(1, 1000)));
    json j = thin_report_to_json(rep);
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("self_similar_period") == 2);
    CHECK(j.at("support_lengths").size() == j.at("support_lengths_approx").size());
    CHECK(j.at("support_lengths")[0] == "1/1");
    double lam = j.at("support_lengths_approx")[1].get<double>();
    CHECK(lam > 0.25410168);
    CHECK(lam < 0.25410169);
}

TEST_CASE("rendering is deterministic and one row per ordinary iteration") {
    auto trace = run_induction(build_special_symmetric(P10412()), Side::right);
    std::string svg = render_svg(trace);
    CHECK(svg == render_svg(trace));
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);

    auto count_rows = [](const std::string& doc) {
        std::size_t n = 0, pos = 0;
        while ((pos = doc.find("<g>", pos)) != std::string::npos) ++n, ++pos;
        return n;
    };
    CHECK(count_rows(svg) == 3);  // initial + two ordinary iterations

    std::string ascii = render_ascii(trace);
    CHECK(ascii == render_ascii(trace));
    CHECK(ascii.find("row 2:") != std::string::npos);
    CHECK(ascii.find("row 3:") == std::string::npos);
}

TEST_CASE("empty trace renders the bare initial system") {
    InductionTrace<Rational> t;
    t.initial = build_special_symmetric(P10412());
    t.final_state = t.initial;
    t.outcome = InductionOutcome::step_cap;
    std::string svg = render_svg(t);
    std::size_t n = 0, pos = 0;
    while ((pos = svg.find("<g>", pos)) != std::string::npos) ++n, ++pos;
    CHECK(n == 1);
    CHECK(render_ascii(t).find("row 0:") != std::string::npos);
}
