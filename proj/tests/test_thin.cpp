#include "doctest.h"

#include <cmath>

#include "iis/cases.hpp"
#include "iis/engine.hpp"
#include "iis/thin.hpp"

using namespace iis;

TEST_CASE("the self-similarity matrix and its characteristic polynomial") {
    auto m = matrix_M();
    const long expect[4][4] = {{3, 1, -1, -4}, {-1, 2, 0, 0}, {-2, -2, 1, 4}, {3, 2, -1, -5}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(m.entries[i][j] == expect[i][j]);
    CHECK((m.determinant() == 1 || m.determinant() == -1));

    // t^4 - t^3 - 4t^2 + 5t - 1 = (t - 1)(t^3 - 4t + 1)
    auto cp = char_poly(m);
    CHECK(cp.coeffs() == std::vector<mpz_class>{-1, 5, -4, -1, 1});
}

TEST_CASE("contraction factor: the cubic's root in (0,1)") {
    NFElem lam = thin_lambda();
    // exact defining relation
    NFElem residual = lam * lam * lam - NFElem(Rational(4)) * lam + NFElem(Rational(1));
    CHECK(residual.sign() == 0);
    CHECK(lam.sign() == 1);
    CHECK(lam < NFElem(Rational(1)));
    CHECK(std::abs(lam.to_double() - 0.2541016884) < 1e-9);
}

TEST_CASE("eigenvector: exact eigen-relation, normalization, positivity") {
    auto p = thin_eigen_params();
    NFElem lam = thin_lambda();
    CHECK(p.a + p.b + p.c == NFElem(Rational(1)));
    for (const NFElem* v : {&p.a, &p.b, &p.c, &p.u}) CHECK(v->sign() == 1);

    // M * (a,b,c,u) = lambda * (a,b,c,u), computed exactly in the field
    auto image = apply_matrix(matrix_M(), p);
    CHECK(image.a == lam * p.a);
    CHECK(image.b == lam * p.b);
    CHECK(image.c == lam * p.c);
    CHECK(image.u == lam * p.u);

    CHECK(std::abs(p.a.to_double() - 0.443636) < 1e-5);
    CHECK(std::abs(p.b.to_double() - 0.254102) < 1e-5);
    CHECK(std::abs(p.c.to_double() - 0.302263) < 1e-5);
    CHECK(std::abs(p.u.to_double() - 0.292504) < 1e-5);
}

TEST_CASE("route: case 4 with k=2, then case 2, and the matrices compose to M") {
    auto p = thin_eigen_params();
    auto [label, hole] = classify_case(p);
    CHECK(label.index == 4);
    CHECK_FALSE(hole);
    CHECK(case_counts(label, p).k == 2);

    auto r1 = predict_next(p);
    REQUIRE(r1.matrix.has_value());
    CHECK(r1.matrix->tag == "B4(k=2)");
    REQUIRE(r1.params.has_value());

    auto [label2, hole2] = classify_case(*r1.params);
    CHECK(label2.index == 2);
    CHECK_FALSE(hole2);
    auto r2 = predict_next(*r1.params);
    REQUIRE(r2.matrix.has_value());
    CHECK(r2.matrix->tag == "A3");

    CHECK(matrix_product(*r2.matrix, *r1.matrix).entries == matrix_M().entries);
    CHECK(verify_matrix_product());
}

TEST_CASE("self-similarity after exactly six ordinary iterations") {
    auto p = thin_eigen_params();
    CHECK(verify_self_similarity(p));

    // round 1: four ordinary iterations, ending with support length a
    auto out1 = symmetrize(build_special_symmetric(p));
    REQUIRE(out1.result == SymmetrizeOutcome<NFElem>::Result::symmetric);
    long red1 = 0;
    for (const auto& s : out1.trace.steps)
        if (s.kind == StepKind::reduction) ++red1;
    CHECK(red1 == 4);
    CHECK(out1.trace.final_state.support.length() == p.a);

    // round 2: two more, landing exactly on lambda * (a,b,c,u)
    REQUIRE(out1.params.has_value());
    auto out2 = symmetrize(build_special_symmetric(*out1.params));
    REQUIRE(out2.result == SymmetrizeOutcome<NFElem>::Result::symmetric);
    long red2 = 0;
    for (const auto& s : out2.trace.steps)
        if (s.kind == StepKind::reduction) ++red2;
    CHECK(red2 == 2);

    NFElem lam = thin_lambda();
    REQUIRE(out2.params.has_value());
    CHECK(out2.params->a == lam * p.a);
    CHECK(out2.params->b == lam * p.b);
    CHECK(out2.params->c == lam * p.c);
    CHECK(out2.params->u == lam * p.u);
}

TEST_CASE("scanner sees the periodic contraction") {
    auto rep = thin_scan(thin_eigen_params(), 12, NFElem(Rational(1, 1000)));
    CHECK(rep.stop_reason == "cap");
    CHECK_FALSE(rep.hole_found);
    REQUIRE(rep.self_similar_period.has_value());
    CHECK(*rep.self_similar_period == 2);
    REQUIRE(rep.scale_factor.has_value());
    CHECK(*rep.scale_factor == thin_lambda());

    NFElem lam = thin_lambda();
    REQUIRE(rep.support_lengths.size() == 4);
    CHECK(rep.support_lengths[0] == NFElem(Rational(1)));
    CHECK(rep.support_lengths[1] == lam);
    CHECK(rep.support_lengths[2] == lam * lam);
    CHECK(rep.support_lengths[3] == lam * lam * lam);
}

TEST_CASE("scanner stop conditions") {
    // a threshold of the full initial length stops before any iteration
    auto eager = thin_scan(thin_eigen_params(), 12, NFElem(Rational(1)));
    CHECK(eager.depth == 0);
    CHECK(eager.stop_reason == "epsilon");

    SymmetricParams<Rational> gapped{Rational(4), Rational(3), Rational(2), Rational(1, 2)};
    auto holed = thin_scan(gapped, 12, Rational(1, 1000));
    CHECK(holed.stop_reason == "hole");
    CHECK(holed.hole_found);

    SymmetricParams<Rational> tie{Rational(1), Rational(1), Rational(1), Rational(1)};
    CHECK_THROWS_AS(thin_scan(tie, 12, Rational(1, 1000)), DegenerateError);
}
