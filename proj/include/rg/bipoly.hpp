#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rg/ratfunc.hpp"

namespace rg {

/// Polynomial in the fiber variable y with coefficients in Q(x) (over the tower).
///
/// Genuine bivariate polynomials are the case where every coefficient is a
/// polynomial in x; the wider coefficient ring lets curves such as
/// y - w1(x) with rational w1 be handled by the same code.
class BiPoly {
public:
    BiPoly() = default;
    BiPoly(const RatFunc& c);
    BiPoly(const Scalar& c) : BiPoly(RatFunc(c)) {}
    BiPoly(int c) : BiPoly(RatFunc(c)) {}
    explicit BiPoly(std::vector<RatFunc> coeffs_in_y);
    static BiPoly x();
    static BiPoly y();
    /// c * x^i * y^j.
    static BiPoly monomial(const Scalar& c, int i, int j);

    int degree_y() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<RatFunc>& coeffs() const { return c_; }
    RatFunc coeff(int j) const;
    /// All coefficients are polynomials in x.
    bool is_polynomial() const;
    /// Total degree (requires is_polynomial).
    int total_degree() const;
    /// Coefficients keyed by (i, j) for x^i y^j (requires is_polynomial).
    std::map<std::pair<int, int>, Scalar> terms() const;
    /// Depends on x only.
    bool is_x_only() const { return c_.size() <= 1; }

    BiPoly operator-() const;
    friend BiPoly operator+(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b);
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    BiPoly& operator+=(const BiPoly& o) { return *this = *this + o; }
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const BiPoly& a, const BiPoly& b) { return !(a == b); }
    BiPoly pow(int e) const;

    BiPoly dx() const;
    BiPoly dy() const;
    /// Exact quotient in Q(x)[y] if d divides this, else nullopt.
    std::optional<BiPoly> divide_exact(const BiPoly& d) const;
    /// Least common multiple of the coefficient denominators.
    Poly common_denominator() const;

    std::string str(const std::string& xv = "x", const std::string& yv = "y") const;

private:
    std::vector<RatFunc> c_;
    void trim();
};

/// Vector field P d/dx + Q d/dy; components polynomial in (x, y).
struct PlanarVectorField {
    BiPoly P, Q;

    /// X(f) = P f_x + Q f_y.
    BiPoly apply(const BiPoly& f) const { return P * f.dx() + Q * f.dy(); }
    BiPoly divergence() const { return P.dx() + Q.dy(); }
    /// max(deg P, deg Q).
    int degree() const;
};

}  // namespace rg
