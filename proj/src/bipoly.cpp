#include "rg/bipoly.hpp"

#include <algorithm>

#include "rg/errors.hpp"

namespace rg {

BiPoly::BiPoly(const RatFunc& c) {
    if (!c.is_zero()) c_.push_back(c);
}

BiPoly::BiPoly(std::vector<RatFunc> coeffs) : c_(std::move(coeffs)) { trim(); }

BiPoly BiPoly::x() { return BiPoly(RatFunc::x()); }

BiPoly BiPoly::y() { return BiPoly(std::vector<RatFunc>{RatFunc(), RatFunc(1)}); }

BiPoly BiPoly::monomial(const Scalar& c, int i, int j) {
    std::vector<RatFunc> v(static_cast<std::size_t>(j) + 1);
    v[j] = RatFunc(Poly::monomial(c, i));
    return BiPoly(std::move(v));
}

void BiPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

RatFunc BiPoly::coeff(int j) const {
    if (j < 0 || j > degree_y()) return RatFunc();
    return c_[j];
}

bool BiPoly::is_polynomial() const {
    return std::all_of(c_.begin(), c_.end(), [](const RatFunc& r) { return r.is_poly(); });
}

int BiPoly::total_degree() const {
    if (!is_polynomial()) throw InvalidArgument("total degree of a non-polynomial");
    int d = -1;
    for (int j = 0; j <= degree_y(); ++j)
        if (!c_[j].is_zero()) d = std::max(d, j + c_[j].num().degree());
    return d;
}

std::map<std::pair<int, int>, Scalar> BiPoly::terms() const {
    if (!is_polynomial()) throw InvalidArgument("monomials of a non-polynomial");
    std::map<std::pair<int, int>, Scalar> out;
    for (int j = 0; j <= degree_y(); ++j) {
        const Poly& p = c_[j].num();
        for (int i = 0; i <= p.degree(); ++i)
            if (!p.coeff(i).is_zero()) out[{i, j}] = p.coeff(i);
    }
    return out;
}

BiPoly BiPoly::operator-() const {
    BiPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
    std::vector<RatFunc> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i < a.c_.size()) v[i] += a.c_[i];
        if (i < b.c_.size()) v[i] += b.c_[i];
    }
    return BiPoly(std::move(v));
}

BiPoly operator-(const BiPoly& a, const BiPoly& b) { return a + (-b); }

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return BiPoly();
    std::vector<RatFunc> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (!a.c_[i].is_zero() && !b.c_[j].is_zero()) v[i + j] += a.c_[i] * b.c_[j];
    return BiPoly(std::move(v));
}

BiPoly BiPoly::pow(int e) const {
    BiPoly r(1), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

BiPoly BiPoly::dx() const {
    std::vector<RatFunc> v;
    for (auto& c : c_) v.push_back(c.derivative());
    return BiPoly(std::move(v));
}

BiPoly BiPoly::dy() const {
    std::vector<RatFunc> v;
    for (std::size_t j = 1; j < c_.size(); ++j) v.push_back(RatFunc(static_cast<int>(j)) * c_[j]);
    return BiPoly(std::move(v));
}

std::optional<BiPoly> BiPoly::divide_exact(const BiPoly& d) const {
    if (d.is_zero()) throw InvalidArgument("BiPoly division by zero");
    if (is_zero()) return BiPoly();
    if (degree_y() < d.degree_y()) return std::nullopt;
    std::vector<RatFunc> rem = c_;
    std::vector<RatFunc> q(c_.size() - d.c_.size() + 1);
    int dd = d.degree_y();
    RatFunc inv = RatFunc(1) / d.c_.back();
    for (int k = degree_y(); k >= dd; --k) {
        if (rem[k].is_zero()) continue;
        RatFunc f = rem[k] * inv;
        q[k - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
    }
    for (int j = 0; j < dd; ++j)
        if (!rem[j].is_zero()) return std::nullopt;
    return BiPoly(std::move(q));
}

Poly BiPoly::common_denominator() const {
    Poly l(1);
    for (auto& c : c_) {
        Poly g = poly_gcd(l, c.den());
        l = l * c.den().divmod(g).first;
    }
    return l.monic();
}

std::string BiPoly::str(const std::string& xv, const std::string& yv) const {
    if (is_zero()) return "0";
    std::string out;
    for (int j = degree_y(); j >= 0; --j) {
        if (c_[j].is_zero()) continue;
        std::string coef = c_[j].str(xv);
        std::string mono = j == 0 ? "" : (j == 1 ? yv : yv + "^" + std::to_string(j));
        std::string term;
        if (mono.empty())
            term = "(" + coef + ")";
        else if (coef == "1")
            term = mono;
        else
            term = "(" + coef + ")*" + mono;
        out += (out.empty() ? "" : "+") + term;
    }
    return out;
}

int PlanarVectorField::degree() const {
    return std::max(P.is_zero() ? 0 : P.total_degree(), Q.is_zero() ? 0 : Q.total_degree());
}

}  // namespace rg
