#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rg/scalar.hpp"

namespace rg {

/// Dense univariate polynomial over Scalar, coefficients indexed by degree.
class Poly {
public:
    static constexpr int kZeroDegree = -1;

    Poly() = default;
    Poly(const Scalar& c);
    Poly(int c) : Poly(Scalar(c)) {}
    explicit Poly(std::vector<Scalar> coeffs);
    /// The monomial c*x^k.
    static Poly monomial(const Scalar& c, int k);
    static Poly x() { return monomial(Scalar(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    const std::vector<Scalar>& coeffs() const { return c_; }
    Scalar coeff(int k) const;
    Scalar lc() const;
    Poly monic() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(const Scalar& s, const Poly& p);
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Quotient and remainder; throws on division by zero.
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly pow(int e) const;
    Poly derivative() const;
    Scalar eval(const Scalar& x) const;
    /// p(x + c).
    Poly shift(const Scalar& c) const;
    /// x^deg * p(1/x).
    Poly reversed() const;
    /// Every coefficient is rational.
    bool is_rational() const;

    std::string str(const std::string& var = "x") const;

private:
    std::vector<Scalar> c_;
    void trim();
};

/// Monic greatest common divisor (zero if both inputs are zero).
Poly poly_gcd(const Poly& a, const Poly& b);

/// Square-free decomposition: pairs (factor, multiplicity), factors monic and square-free.
std::vector<std::pair<Poly, int>> squarefree_factorization(const Poly& p);

}  // namespace rg
