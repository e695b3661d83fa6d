#include <doctest.h>

#include <random>

#include "rg/darboux.hpp"
#include "rg/errors.hpp"

using namespace rg;

namespace {

Scalar Q(long n, long d = 1) { return Scalar::frac(n, d); }
RatFunc R(long n, long d = 1) { return RatFunc(Q(n, d)); }
const RatFunc X = RatFunc::x();
const BiPoly BX = BiPoly::x(), BW = BiPoly::y();

RatFunc whittaker(const Scalar& kappa, const Scalar& mu) {
    return R(1, 4) - RatFunc(kappa) / X + RatFunc(Q(4) * mu * mu - Q(1)) / (R(4) * X * X);
}

BiPoly random_bipoly(std::mt19937& rng, int deg) {
    std::uniform_int_distribution<int> c(-3, 3);
    BiPoly f;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; i + j <= deg; ++j) f += BiPoly::monomial(Scalar(c(rng)), i, j);
    return f;
}

}  // namespace

TEST_CASE("cofactor_of examples") {
    RatFunc r = X * X - R(1);
    PlanarVectorField vric = riccati_field(r);
    RatFunc w1 = -X;
    auto K = cofactor_of(vric, -BW + BiPoly(w1));
    REQUIRE(K);
    CHECK(*K == -(BW + BiPoly(w1)));

    PlanarVectorField any{BX * BW + BiPoly(3), BW * BW - BX};
    CHECK(*cofactor_of(any, BiPoly(1)) == BiPoly());

    PlanarVectorField radial{BX, BW};
    CHECK(*cofactor_of(radial, BW - BX) == BiPoly(1));
    CHECK_FALSE(cofactor_of(PlanarVectorField{BiPoly(1), BX}, BW));
}

TEST_CASE("cofactors are additive on products") {
    std::mt19937 rng(7);
    PlanarVectorField radial{BX, BW};
    for (int i = 0; i < 10; ++i) {
        // Homogeneous polynomials are invariant for the radial field.
        BiPoly f = BiPoly::monomial(Q(1), 2, 0) + BiPoly::monomial(Scalar(i + 1), 1, 1);
        BiPoly g = BiPoly::monomial(Q(2), 0, 3) - BiPoly::monomial(Scalar(i), 3, 0);
        auto kf = cofactor_of(radial, f), kg = cofactor_of(radial, g), kfg = cofactor_of(radial, f * g);
        REQUIRE(kf);
        REQUIRE(kg);
        REQUIRE(kfg);
        CHECK(*kfg == *kf + *kg);
    }
    // Random fields: X(f) = K f for f = X-invariant product of two lines.
    for (int i = 0; i < 10; ++i) {
        BiPoly a = random_bipoly(rng, 1), b = random_bipoly(rng, 1);
        BiPoly l1 = BW - BX, l2 = BW + BX;
        PlanarVectorField F{l1 * a + l2 * b, l1 * a - l2 * b};
        auto k1 = cofactor_of(F, l1), k2 = cofactor_of(F, l2), k12 = cofactor_of(F, l1 * l2);
        if (k1 && k2) {
            REQUIRE(k12);
            CHECK(*k12 == *k1 + *k2);
        }
    }
}

TEST_CASE("invariant_curve respects the degree bound") {
    PlanarVectorField radial{BX, BW};
    auto c = invariant_curve(radial, BW - BX);
    REQUIRE(c);
    CHECK(c->K.total_degree() <= radial.degree() - 1);
}

TEST_CASE("darboux_combination examples") {
    RatFunc r = X * X - R(1);
    PlanarVectorField vric = riccati_field(r);
    RatFunc w1 = -X;
    auto f1 = invariant_curve(vric, -BW + BiPoly(w1));
    REQUIRE(f1);
    auto F1 = exponential_integral_factor(vric, -w1);
    CHECK(F1.Ktilde == -BiPoly(w1));
    auto mu = darboux_combination({*f1}, {F1}, vric, DarbouxTarget::IntegratingFactor);
    REQUIRE(mu);
    CHECK(mu->lambda[0] == Q(-2));
    CHECK(mu->lambda_exp[0] == Q(2));

    PlanarVectorField any{BX * BW + BiPoly(3), BW * BW - BX};
    auto fi = darboux_combination({AlgebraicCurve{BiPoly(1), BiPoly()}}, {}, any, DarbouxTarget::FirstIntegral);
    REQUIRE(fi);
    CHECK(fi->lambda[0] == Q(1));

    PlanarVectorField saddle{BX, -BW};
    auto cx = invariant_curve(saddle, BX), cy = invariant_curve(saddle, BW);
    REQUIRE(cx);
    REQUIRE(cy);
    CHECK(cx->K == -cy->K);
    auto h = darboux_combination({*cx, *cy}, {}, saddle, DarbouxTarget::FirstIntegral);
    REQUIRE(h);
    CHECK(h->lambda[0] == h->lambda[1]);
    CHECK_FALSE(h->lambda[0].is_zero());
}

TEST_CASE("exponential_factor") {
    // X = d/dx + w d/dw: exp(x) has cofactor 1.
    PlanarVectorField X1{BiPoly(1), BW};
    auto e = exponential_factor(X1, BX, BiPoly(1));
    REQUIRE(e);
    CHECK(e->Ktilde == BiPoly(1));
    // exp(w/x) is not an exponential factor of d/dx: X(w/x) = -w/x^2.
    CHECK_FALSE(exponential_factor(PlanarVectorField{BiPoly(1), BiPoly()}, BW, BX));
}

TEST_CASE("integrating_factor_from_solution examples") {
    RatFunc r = X * X - R(1);
    auto mu = integrating_factor_from_solution(-X, riccati_field(r));
    CHECK(mu.factors.size() == 1);
    CHECK(mu.exp_integral == R(2) * X);
    CHECK(mu.factors[0].first == -BW - BX);
    CHECK(is_integrating_factor(riccati_field(r), mu));

    auto mu1 = integrating_factor_from_solution(R(1), riccati_field(R(1)));
    CHECK(mu1.exp_integral == R(-2));
    CHECK(is_integrating_factor(riccati_field(R(1)), mu1));

    CHECK_THROWS_AS(integrating_factor_from_solution(RatFunc(), riccati_field(R(1))), NotASolution);
}

TEST_CASE("integrating factor needs 1/q when q is not constant") {
    // Whittaker with kappa = mu + 1/2 has a rational Riccati solution and q = x^2.
    Scalar m = Q(3, 4);
    RatFunc r = whittaker(m + Q(1, 2), m);
    auto c1 = case1(r);
    REQUIRE(c1);
    RatFunc w1 = c1->riccati_solution();
    PlanarVectorField vric = riccati_field(r);
    CHECK_FALSE(vric.P.coeff(0).is_constant());
    CHECK(is_integrating_factor(vric, integrating_factor_from_solution(w1, vric)));
    CHECK(is_integrating_factor(normalized_riccati_field(r), lemma_integrating_factor(w1)));
    CHECK_FALSE(is_integrating_factor(vric, lemma_integrating_factor(w1)));
}

TEST_CASE("first_integral_two_solutions") {
    auto H = first_integral_two_solutions(R(1), R(-1));
    CHECK(H.exp_integral == R(-2));
    CHECK(is_first_integral(riccati_field(R(1)), H));
    CHECK(is_first_integral(normalized_riccati_field(R(1)), H));
    CHECK_THROWS_AS(first_integral_two_solutions(R(1), R(1)), Degenerate);
    CHECK_THROWS_AS(first_integral_two_solutions(R(1), R(2)), NotASolution);

    // r = 0: w1 = 0 and w2 = 1/x both solve w' = -w^2.
    auto H0 = first_integral_two_solutions(RatFunc(), R(1) / X);
    CHECK(is_first_integral(riccati_field(RatFunc()), H0));
}

TEST_CASE("rational_first_integral_cyclic") {
    auto H = rational_first_integral_cyclic(X, 1);
    // (1/x^2)(-x w - 1)/(-x w + 1) = (x w + 1)/(x^3 w - x^2).
    CHECK(H.num == BX * BW + BiPoly(1));
    CHECK(H.den == BX * BX * BX * BW - BX * BX);

    auto H2 = rational_first_integral_cyclic(X, 2);
    BiPoly n2 = (BiPoly(2) * BX * BW + BiPoly(1)).pow(2);
    BiPoly d2 = BX * BX * (BiPoly(-2) * BX * BW + BiPoly(1)).pow(2);
    CHECK(H2.num * d2 == n2 * H2.den);
}

TEST_CASE("cyclic formula is not invariant for nonconstant g") {
    // The construction pairs w1 = g'/(n g) with w2 = -w1, but w2' + w2^2 = -w1' + w1^2 differs from
    // rho = w1' + w1^2 unless w1 is constant, so H is not a first integral of w' = rho - w^2.
    for (int n = 1; n <= 4; ++n)
        for (RatFunc g : {X, X * X + R(1), (X - R(2)) / (X + R(3))}) {
            RatFunc w1 = g.derivative() / (RatFunc(n) * g);
            RatFunc rho = w1.derivative() + w1 * w1;
            RatFunc w2 = -w1;
            CHECK(w2.derivative() + w2 * w2 != rho);
            CHECK_FALSE(is_first_integral(normalized_riccati_field(rho), rational_first_integral_cyclic(g, n)));
        }
    // Constant g: w1 = 0 solves w' = -w^2 and H = 1/g^2 is trivially invariant.
    CHECK(is_first_integral(normalized_riccati_field(RatFunc()), rational_first_integral_cyclic(R(3), 2)));
}

TEST_CASE("classify_first_integral") {
    CHECK(classify_first_integral(solve_rlde(ReducedODE{X})).type == FirstIntegralType::None);
    auto h = classify_first_integral(solve_rlde(ReducedODE{X * X - R(1)}));
    CHECK(h.type == FirstIntegralType::DarbouxSchwarzChristoffel);
    REQUIRE(h.integrating_factor);
    CHECK(is_integrating_factor(riccati_field(X * X - R(1)), *h.integrating_factor));
    CHECK(classify_first_integral(solve_rlde(ReducedODE{X * X - R(7)})).type ==
          FirstIntegralType::DarbouxSchwarzChristoffel);
    auto c = classify_first_integral(solve_rlde(ReducedODE{R(1)}));
    CHECK(c.type == FirstIntegralType::Darboux);
    CHECK(c.rational_solutions.size() == 2);
    CHECK(to_string(FirstIntegralType::Rational) == "rational");
}
