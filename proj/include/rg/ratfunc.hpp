#pragma once

#include <string>

#include "rg/poly.hpp"

namespace rg {

/// Canonical quotient num/den: gcd(num, den) = 1 and den monic.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(const Scalar& c) : num_(c), den_(1) {}
    RatFunc(int c) : RatFunc(Scalar(c)) {}
    RatFunc(const Poly& p) : num_(p), den_(1) {}
    RatFunc(const Poly& num, const Poly& den);
    static RatFunc x() { return RatFunc(Poly::x()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_poly() const { return den_.degree() == 0; }
    bool is_constant() const { return is_poly() && num_.is_constant(); }
    Scalar constant() const { return num_.coeff(0); }

    RatFunc operator-() const;
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc pow(int e) const;
    RatFunc derivative() const;
    Scalar eval(const Scalar& x) const;
    /// deg(den) - deg(num); the order at infinity (large sentinel for zero).
    int order_at_infinity() const;
    /// Every coefficient of num and den is rational.
    bool is_rational() const { return num_.is_rational() && den_.is_rational(); }

    std::string str(const std::string& var = "x") const;

private:
    Poly num_, den_;
};

RatFunc derivative(const RatFunc& f);

/// The rational function 1/(x - c)^k.
RatFunc pole_term(const Scalar& c, int k);

}  // namespace rg
