#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rg/errors.hpp"
#include "rg/poly.hpp"
#include "rg/ratfunc.hpp"
#include "rg/scalar.hpp"

namespace rg {

/// A finite pole (c set) or the point at infinity (c empty).
struct PoleData {
    std::optional<Scalar> c;
    int order = 0;

    bool at_infinity() const { return !c.has_value(); }
    std::string str() const;
    friend bool operator==(const PoleData& a, const PoleData& b) { return a.c == b.c && a.order == b.order; }
};

/// Truncated Laurent series sum_k coeff[k] * t^(val + k), exact up to t^(val + size - 1).
struct Series {
    int val = 0;
    std::vector<Scalar> coeff;

    Scalar at(int exponent) const;
    int last() const { return val + static_cast<int>(coeff.size()) - 1; }
};

/// Expansion of r in t = x - c (finite pole) or t = 1/x (infinity), exponents val .. upto.
Series expand(const RatFunc& r, const PoleData& at, int upto);
Series series_mul(const Series& a, const Series& b);
Series series_sub(const Series& a, const Series& b);
/// Square root of a series with even valuation; throws OddLeadingOrder otherwise.
Series series_sqrt(const Series& s);

/// Leading part of sqrt(r) at a point.
///
/// terms maps exponents of (x - c), or of x at infinity, to coefficients.
/// leading is the coefficient a of the dominant term and b the coefficient
/// following the square: (x-c)^-(v+1) resp. x^(v-1) in r - head^2.
struct LaurentHead {
    std::optional<Scalar> center;
    std::map<int, Scalar> terms;
    std::map<int, Scalar> tail;
    Scalar leading;
    Scalar b;
    int v = 0;

    RatFunc to_ratfunc() const;
};

/// Roots of a polynomial with multiplicities, in a fixed order.
std::vector<std::pair<Scalar, int>> poly_roots(const Poly& p);

/// Finite poles of r with multiplicity followed by infinity.
std::vector<PoleData> find_poles(const RatFunc& r);

/// sqrt(r) at a point of even order >= 4 (finite) or even order <= 0 (infinity).
/// depth extra terms of the series beyond the head are stored in tail.
LaurentHead sqrt_laurent(const RatFunc& r, const PoleData& at, int depth = 0);

using Matrix = std::vector<std::vector<Scalar>>;

struct LinearSolution {
    std::vector<Scalar> x;
    std::vector<std::vector<Scalar>> nullspace;
};

/// Exact solution of A x = rhs by fraction-free elimination; free variables set to zero.
std::optional<LinearSolution> linear_solve(const Matrix& A, const std::vector<Scalar>& rhs);

/// Determinant by fraction-free elimination.
Scalar determinant(Matrix A);

struct PartialFractionTerm {
    Scalar c;
    int k = 1;
    Scalar coeff;
};

/// f = polynomial + sum coeff / (x - c)^k.
struct PartialFractions {
    Poly polynomial;
    std::vector<PartialFractionTerm> terms;

    RatFunc to_ratfunc() const;
};

PartialFractions partial_fractions(const RatFunc& f);

}  // namespace rg
