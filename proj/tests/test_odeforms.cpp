#include <doctest.h>

#include <random>

#include "rg/odeforms.hpp"
#include "rg/errors.hpp"

using namespace rg;

namespace {

Scalar Q(long n, long d = 1) { return Scalar::frac(n, d); }
RatFunc R(long n, long d = 1) { return RatFunc(Q(n, d)); }
const RatFunc X = RatFunc::x();

RatFunc random_ratfunc(std::mt19937& rng) {
    std::uniform_int_distribution<int> c(-3, 3), deg(0, 3);
    auto poly = [&] {
        std::vector<Scalar> v;
        int d = deg(rng);
        for (int i = 0; i <= d; ++i) v.emplace_back(c(rng));
        return Poly(v);
    };
    Poly den = poly();
    while (den.is_zero()) den = poly();
    return RatFunc(poly(), den);
}

}  // namespace

TEST_CASE("transform_T examples") {
    RatFunc r0 = X * X + R(3) / X;
    auto [red, sub] = transform_T(RiccatiGeneral{r0, RatFunc(), R(-1)});
    CHECK(red.r == r0);
    CHECK(sub.alpha.is_zero());
    CHECK(sub.beta == R(1));

    // Hermite row Q = 1, L = -2x, lambda = 2n, mu = 1 with n = 3.
    auto [h, hs] = transform_T(RiccatiGeneral{R(6), R(2) * X, R(1)});
    CHECK(h.r == X * X - R(7));
    CHECK(hs.alpha == -X);

    // (S1) Riccati form: r = D/4 - K/x + (lambda^2 - 1)/(4x^2) by hand elimination.
    Scalar eps = Q(2), lam = Q(1, 3), b20 = Q(-1), b11 = Q(3), b02 = Q(1, 2);
    RiccatiGeneral s1{RatFunc(eps) + RatFunc(b20) * X, (RatFunc(lam) + RatFunc(b11) * X) / X, RatFunc(b02) / X};
    Scalar D = b11 * b11 - Q(4) * b20 * b02;
    Scalar K = b02 * eps + b11 / Q(2) * (Q(1) - lam);
    RatFunc expected = RatFunc(D / Q(4)) - RatFunc(K) / X + RatFunc((lam * lam - Q(1)) / Q(4)) / (X * X);
    CHECK(transform_T(s1).first.r == expected);
}

TEST_CASE("transform_B examples") {
    // Orthogonal family shape (Legendre row, n = 2): y'' + (L/Q) y' + (lambda/Q) y = 0.
    RatFunc Qp = R(1) - X * X, L = R(-2) * X, lam = R(6);
    auto b = transform_B(RiccatiGeneral{lam, (Qp.derivative() - L) / Qp, R(1) / Qp});
    CHECK(b.b1 == L / Qp);
    CHECK(b.b0 == lam / Qp);

    RatFunc r = X + R(1);
    auto red = transform_B(RiccatiGeneral{r, RatFunc(), R(-1)});
    CHECK(red.b1.is_zero());
    CHECK(red.b0 == -r);

    auto d = transform_B(RiccatiGeneral{R(1), X, X});
    CHECK(d.b1 == -(X + R(1) / X));
    CHECK(d.b0 == X);
}

TEST_CASE("transform_S examples") {
    RatFunc r = X * X - R(2);
    CHECK(transform_S(SecondOrderODE{RatFunc(), -r}).first.rho == r);

    Scalar n = Q(3, 2);
    auto bessel = transform_S(SecondOrderODE{R(1) / X, (X * X - RatFunc(n * n)) / (X * X)});
    CHECK(bessel.first.rho == RatFunc(Q(4) * n * n - Q(1)) / (R(4) * X * X) - R(1));
    CHECK(bessel.second.integrand == R(-1, 2) / X);

    // Kummer y'' + ((c-x)/x) y' - (a/x) y = 0 reduces to Whittaker with kappa = c/2 - a, mu = c/2 - 1/2.
    Scalar a = Q(1, 3), c = Q(5, 2);
    auto kummer = transform_S(SecondOrderODE{(RatFunc(c) - X) / X, -RatFunc(a) / X});
    Scalar kappa = c / Q(2) - a, mu = c / Q(2) - Q(1, 2);
    RatFunc whittaker = R(1, 4) - RatFunc(kappa) / X + RatFunc(Q(4) * mu * mu - Q(1)) / (R(4) * X * X);
    CHECK(kummer.first.rho == whittaker);
}

TEST_CASE("transform_S is unchanged by a constant gauge") {
    std::mt19937 rng(21);
    for (int i = 0; i < 20; ++i) {
        SecondOrderODE e{random_ratfunc(rng), random_ratfunc(rng)};
        // y -> c*y multiplies every term by c; dividing back yields the same coefficients.
        RatFunc c = R(5, 3);
        SecondOrderODE scaled{c * e.b1 / c, c * e.b0 / c};
        CHECK(transform_S(e).first.rho == transform_S(scaled).first.rho);
    }
}

TEST_CASE("transform_R examples") {
    CHECK(transform_R(ReducedODE{X}).r == X);
    CHECK(transform_R(ReducedODE{RatFunc()}).r.is_zero());
    RatFunc w = R(1, 4) - R(1) / X + R(3, 4) / (X * X);
    CHECK(transform_R(ReducedODE{w}).r == w);
}

TEST_CASE("S after B equals R after T on random equations") {
    std::mt19937 rng(1234);
    int checked = 0;
    while (checked < 100) {
        RiccatiGeneral e{random_ratfunc(rng), random_ratfunc(rng), random_ratfunc(rng)};
        if (e.a2.is_zero()) continue;
        RatFunc lhs = transform_R(transform_S(transform_B(e)).first).r;
        RatFunc rhs = transform_T(e).first.r;
        CHECK(lhs == rhs);
        ++checked;
    }
}

TEST_CASE("inverse substitution recovers the original equation") {
    std::mt19937 rng(99);
    int checked = 0;
    while (checked < 30) {
        RiccatiGeneral e{random_ratfunc(rng), random_ratfunc(rng), random_ratfunc(rng)};
        if (e.a2.is_zero()) continue;
        auto [red, sub] = transform_T(e);
        CHECK(apply_substitution(red, sub) == e);
        ++checked;
    }
}

TEST_CASE("foliation_of examples") {
    // w' = p - q w^2 with x' = q.
    BiPoly p(X * X + R(1)), q(X);
    BiPoly w = BiPoly::y();
    auto f = foliation_of(PlanarVectorField{q, p - q * w * w});
    CHECK(f.reduced);
    CHECK(f.eq.a0 == (X * X + R(1)) / X);

    // (S1): x' = x, y' = eps x + lambda y + b20 x^2 + b11 x y + b02 y^2.
    Scalar eps = Q(1), lam = Q(-2), b20 = Q(3), b11 = Q(1, 2), b02 = Q(5);
    BiPoly xx = BiPoly::x(), yy = BiPoly::y();
    BiPoly Qf = BiPoly(eps) * xx + BiPoly(lam) * yy + BiPoly(b20) * xx * xx + BiPoly(b11) * xx * yy +
                BiPoly(b02) * yy * yy;
    auto s1 = foliation_of(PlanarVectorField{xx, Qf});
    CHECK(s1.eq.a0 == RatFunc(eps) + RatFunc(b20) * X);
    CHECK(s1.eq.a1 == (RatFunc(lam) + RatFunc(b11) * X) / X);
    CHECK(s1.eq.a2 == RatFunc(b02) / X);

    CHECK_THROWS_AS(foliation_of(PlanarVectorField{yy * yy * yy, BiPoly(1)}), NotRiccati);
    CHECK_THROWS_AS(foliation_of(PlanarVectorField{xx, yy * yy * yy}), NotRiccati);
}
