#include "rg/ratfunc.hpp"

#include <climits>

#include "rg/errors.hpp"

namespace rg {

RatFunc::RatFunc(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw InvalidArgument("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Poly(1);
        return;
    }
    Poly g = poly_gcd(num, den);
    Poly n = num, d = den;
    if (g.degree() > 0) {
        n = num.divmod(g).first;
        d = den.divmod(g).first;
    }
    Scalar inv = d.lc().inverse();
    num_ = inv * n;
    den_ = inv * d;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.is_poly() && b.is_poly()) {
        RatFunc r;
        r.num_ = a.num_ * b.num_;
        return r;
    }
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw InvalidArgument("rational function division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return (RatFunc(1) / *this).pow(-e);
    RatFunc r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

RatFunc RatFunc::derivative() const {
    if (is_poly()) return RatFunc(num_.derivative());
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Scalar RatFunc::eval(const Scalar& x) const {
    Scalar d = den_.eval(x);
    if (d.is_zero()) throw InvalidArgument("evaluation at a pole");
    return num_.eval(x) / d;
}

int RatFunc::order_at_infinity() const {
    if (is_zero()) return INT_MAX;
    return den_.degree() - num_.degree();
}

std::string RatFunc::str(const std::string& var) const {
    if (is_poly()) return num_.str(var);
    std::string n = num_.str(var);
    bool num_atomic = num_.is_constant() && num_.coeff(0).is_rational() && num_.coeff(0).to_rational() > 0 &&
                      num_.coeff(0).is_integer();
    if (!num_atomic) n = "(" + n + ")";
    return n + "/(" + den_.str(var) + ")";
}

RatFunc derivative(const RatFunc& f) { return f.derivative(); }

RatFunc pole_term(const Scalar& c, int k) {
    Poly xc(std::vector<Scalar>{-c, Scalar(1)});
    return RatFunc(Poly(1), xc.pow(k));
}

}  // namespace rg
