#include <doctest.h>

#include <random>

#include "rg/exactalg.hpp"

using namespace rg;

namespace {

Poly P(std::initializer_list<long> c) {
    std::vector<Scalar> v;
    for (long x : c) v.emplace_back(x);
    return Poly(v);
}

Scalar Q(long n, long d = 1) { return Scalar::frac(n, d); }

// Cofactor-expansion determinant over the rationals (independent of the library).
Rational cofactor_det(const std::vector<std::vector<Rational>>& m) {
    std::size_t n = m.size();
    if (n == 1) return m[0][0];
    Rational acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Rational>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Rational> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(row);
        }
        Rational term = m[0][j] * cofactor_det(minor);
        acc += (j % 2 ? -term : term);
    }
    return acc;
}

RatFunc random_ratfunc(std::mt19937& rng, int deg) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::vector<Scalar> n, m;
    for (int i = 0; i <= deg; ++i) n.emplace_back(d(rng));
    for (int i = 0; i <= deg; ++i) m.emplace_back(d(rng));
    Poly den(m);
    if (den.is_zero()) den = Poly(1);
    return RatFunc(Poly(n), den);
}

}  // namespace

TEST_CASE("scalar arithmetic in a quadratic tower") {
    TowerScope scope(2);
    Scalar r5 = Scalar(5).sqrt();
    CHECK(r5 * r5 == Scalar(5));
    Scalar a = Q(1) + Q(2) * r5;
    CHECK((a / Q(3)).str() == "(1+2*sqrt(5))/3");
    Scalar b = Q(3, 7) - r5;
    CHECK((a / b) * b == a);
    Scalar r2 = Scalar(2).sqrt();
    Scalar c = r2 + r5;
    CHECK(c * c.inverse() == Scalar(1));
    CHECK(Tower::depth() == 2);
    CHECK_THROWS_AS(Scalar(3).sqrt(), Unsupported);
    // sqrt(10) lies in Q(sqrt 2, sqrt 5): no new adjunction needed.
    CHECK(Scalar(10).sqrt() * Scalar(10).sqrt() == Scalar(10));
}

TEST_CASE("square roots of negative rationals") {
    TowerScope scope(1);
    CHECK(Scalar(-4).sqrt().str() == "2*sqrt(-1)");
    CHECK(Scalar(-4).sqrt().pow(2) == Scalar(-4));
}

TEST_CASE("scalar square roots denest inside the tower") {
    TowerScope scope(2);
    Scalar r2 = Scalar(2).sqrt();
    Scalar s = Q(3) + Q(2) * r2;  // (1 + sqrt 2)^2
    CHECK(s.sqrt() * s.sqrt() == s);
    CHECK_THROWS_AS((Q(1) + r2).sqrt(), Unsupported);
}

TEST_CASE("scalar field laws on random elements") {
    TowerScope scope(3);
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    Scalar r2 = Scalar(2).sqrt(), r3 = Scalar(-3).sqrt(), r7 = Scalar(7).sqrt();
    for (int i = 0; i < 50; ++i) {
        Scalar x = Q(d(rng)) + Q(d(rng)) * r2 + Q(d(rng)) * r3 + Q(d(rng)) * r2 * r7;
        Scalar y = Q(d(rng), 3) + Q(d(rng)) * r7;
        if (y.is_zero()) continue;
        CHECK((x / y) * y == x);
        CHECK(x * (y + x) == x * y + x * x);
    }
}

TEST_CASE("poly_gcd examples") {
    CHECK(poly_gcd(P({-1, 0, 1}), P({-1, 1})) == P({-1, 1}));
    CHECK(poly_gcd(P({1, 0, 1}), P({2, 1})) == P({1}));
    CHECK(poly_gcd(P({0, -1, 0, 4}), P({0, 0, 2})) == P({0, 1}));
}

TEST_CASE("find_poles examples") {
    TowerScope scope(2);
    auto p = find_poles(RatFunc(P({1}), P({0, 0, 1})));
    REQUIRE(p.size() == 2);
    CHECK(p[0] == PoleData{Scalar(0), 2});
    CHECK(p[1] == PoleData{std::nullopt, 2});

    // Whittaker shape with kappa = 1, mu = 1: 1/4 - 1/x + 3/(4x^2)
    RatFunc w = RatFunc(Q(1, 4)) - RatFunc(P({1}), P({0, 1})) + RatFunc(Poly(Q(3, 4)), P({0, 0, 1}));
    auto pw = find_poles(w);
    REQUIRE(pw.size() == 2);
    CHECK(pw[0] == PoleData{Scalar(0), 2});
    CHECK(pw[1].order == 0);

    CHECK_THROWS_AS(find_poles(RatFunc(P({1}), P({-2, 0, 0, 1}))), Unsupported);
}

TEST_CASE("find_poles splits quadratics and rational roots") {
    TowerScope scope(2);
    // (x^2 + 1)(x - 2)^2 (x + 1/2)
    Poly den = P({1, 0, 1}) * P({-2, 1}).pow(2) * Poly(std::vector<Scalar>{Q(1, 2), Q(1)});
    auto poles = find_poles(RatFunc(P({1}), den));
    int total = 0;
    for (auto& p : poles)
        if (!p.at_infinity()) total += p.order;
    CHECK(total == den.degree());
    CHECK(poles.back().order == 5);
    for (auto& p : poles)
        if (!p.at_infinity()) CHECK(den.eval(*p.c).is_zero());
}

TEST_CASE("sqrt_laurent examples") {
    TowerScope scope(2);
    auto h = sqrt_laurent(RatFunc(P({1}), P({0, 0, 0, 0, 1})), PoleData{Scalar(0), 4});
    CHECK(h.terms.size() == 1);
    CHECK(h.terms.at(-2) == Scalar(1));
    CHECK(h.b.is_zero());

    auto inf = sqrt_laurent(RatFunc(P({-1, 0, 1})), PoleData{std::nullopt, -2});
    CHECK(inf.to_ratfunc() == RatFunc(P({0, 1})));
    CHECK(inf.b == Scalar(-1));

    auto sq = sqrt_laurent(RatFunc(P({0, 0, 1})), PoleData{std::nullopt, -2});
    CHECK(sq.to_ratfunc() == RatFunc(P({0, 1})));
    CHECK(sq.b.is_zero());

    CHECK_THROWS_AS(sqrt_laurent(RatFunc(P({0, 1})), PoleData{std::nullopt, -1}), OddLeadingOrder);
}

TEST_CASE("sqrt_laurent head squares to the leading terms of r") {
    TowerScope scope(2);
    // r = (x^3 + 2x + 1)/x^6 at 0 has order 6.
    RatFunc r(P({1, 2, 0, 1}), Poly::monomial(Scalar(1), 6));
    PoleData at{Scalar(0), 6};
    auto h = sqrt_laurent(r, at);
    Series rs = expand(r, at, -4);
    Series head;
    head.val = -3;
    for (int e = -3; e <= 0; ++e) head.coeff.push_back(h.terms.count(e) ? h.terms.at(e) : Scalar());
    Series hh = series_mul(head, head);
    for (int e = -6; e <= -5; ++e) CHECK(hh.at(e) == rs.at(e));
    CHECK(rs.at(-4) - hh.at(-4) == h.b);

    // r = x^4 + x + 3 at infinity.
    RatFunc q(P({3, 1, 0, 0, 1}));
    auto hi = sqrt_laurent(q, PoleData{std::nullopt, -4});
    RatFunc sq = hi.to_ratfunc() * hi.to_ratfunc();
    RatFunc diff = q - sq;
    CHECK(diff.num().degree() <= 1);
    CHECK(diff.num().coeff(1) == hi.b);
}

TEST_CASE("linear_solve examples") {
    Matrix I{{Q(1), Q(0)}, {Q(0), Q(1)}};
    auto s = linear_solve(I, {Q(1), Q(2)});
    REQUIRE(s);
    CHECK(s->x == std::vector<Scalar>{Q(1), Q(2)});
    CHECK(!linear_solve(Matrix{{Q(0)}}, {Q(1)}));

    Matrix H(3, std::vector<Scalar>(3));
    std::vector<std::vector<Rational>> Hr(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            H[i][j] = Q(1, i + j + 1);
            Hr[i][j] = Rational(1, i + j + 1);
        }
    // Cramer's rule oracle.
    Rational det = cofactor_det(Hr);
    std::vector<Rational> oracle;
    for (int k = 0; k < 3; ++k) {
        auto M = Hr;
        for (int i = 0; i < 3; ++i) M[i][k] = i == 0 ? 1 : 0;
        oracle.push_back(cofactor_det(M) / det);
    }
    CHECK(oracle == std::vector<Rational>{9, -36, 30});
    auto h = linear_solve(H, {Q(1), Q(0), Q(0)});
    REQUIRE(h);
    CHECK(h->x == std::vector<Scalar>{Q(9), Q(-36), Q(30)});
}

TEST_CASE("linear_solve resubstitutes and returns a nullspace") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        Matrix A(3, std::vector<Scalar>(5));
        for (auto& row : A)
            for (auto& e : row) e = Q(d(rng));
        A[2] = A[0];
        std::vector<Scalar> rhs{Q(d(rng)), Q(d(rng)), Q(0)};
        rhs[2] = rhs[0];
        auto s = linear_solve(A, rhs);
        REQUIRE(s);
        for (int i = 0; i < 3; ++i) {
            Scalar acc;
            for (int j = 0; j < 5; ++j) acc += A[i][j] * s->x[j];
            CHECK(acc == rhs[i]);
            for (auto& n : s->nullspace) {
                Scalar z;
                for (int j = 0; j < 5; ++j) z += A[i][j] * n[j];
                CHECK(z.is_zero());
            }
        }
        CHECK(s->nullspace.size() >= 3);
    }
}

TEST_CASE("determinant agrees with cofactor expansion") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int n = 1; n <= 5; ++n) {
        Matrix A(n, std::vector<Scalar>(n));
        std::vector<std::vector<Rational>> R(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int v = d(rng);
                A[i][j] = Q(v, 2);
                R[i][j] = Rational(v, 2);
            }
        CHECK(determinant(A) == Scalar(cofactor_det(R)));
    }
}

TEST_CASE("derivative and partial fractions examples") {
    CHECK(derivative(RatFunc(P({1}), P({0, 1}))) == RatFunc(P({-1}), P({0, 0, 1})));
    CHECK(derivative(RatFunc(P({1, 0, 1}), P({0, 1}))) == RatFunc(P({-1, 0, 1}), P({0, 0, 1})));
    auto pf = partial_fractions(RatFunc(P({1}), P({-1, 0, 1})));
    REQUIRE(pf.terms.size() == 2);
    CHECK(pf.polynomial.is_zero());
    CHECK(pf.terms[0].c == Scalar(-1));
    CHECK(pf.terms[0].coeff == Q(-1, 2));
    CHECK(pf.terms[1].c == Scalar(1));
    CHECK(pf.terms[1].coeff == Q(1, 2));
}

TEST_CASE("partial fractions reconstruct the input") {
    TowerScope scope(2);
    RatFunc f(P({3, 0, 1, 0, 0, 2}), P({0, 0, 1}) * P({1, 0, 1}) * P({-3, 1}));
    auto pf = partial_fractions(f);
    CHECK(pf.to_ratfunc() == f);
}

TEST_CASE("Leibniz rule on random rational functions") {
    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        RatFunc f = random_ratfunc(rng, 2), g = random_ratfunc(rng, 3);
        CHECK(derivative(f * g) == derivative(f) * g + f * derivative(g));
    }
}

TEST_CASE("canonical form makes equality structural") {
    RatFunc a(P({-2, 0, 2}), P({2, 2}));  // 2(x^2-1)/(2(x+1)) = x - 1
    CHECK(a == RatFunc(P({-1, 1})));
    RatFunc b(P({1}), P({0, 3}));
    CHECK(b.den() == P({0, 1}));
    CHECK(b.num() == Poly(Q(1, 3)));
}
