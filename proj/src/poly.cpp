#include "rg/poly.hpp"

#include "rg/errors.hpp"

namespace rg {

Poly::Poly(const Scalar& c) {
    if (!c.is_zero()) c_.push_back(c);
}

Poly::Poly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Scalar& c, int k) {
    Poly p;
    if (c.is_zero()) return p;
    p.c_.assign(static_cast<std::size_t>(k) + 1, Scalar());
    p.c_[k] = c;
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly::coeff(int k) const {
    if (k < 0 || k > degree()) return Scalar();
    return c_[k];
}

Scalar Poly::lc() const { return c_.empty() ? Scalar() : c_.back(); }

Poly Poly::monic() const {
    if (is_zero()) return *this;
    Scalar inv = lc().inverse();
    Poly r = *this;
    for (auto& c : r.c_) c *= inv;
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (!b.c_[j].is_zero()) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
}

Poly operator*(const Scalar& s, const Poly& p) {
    if (s.is_zero()) return Poly();
    Poly r = p;
    for (auto& c : r.c_) c = s * c;
    return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
    if (degree() < d.degree()) return {Poly(), *this};
    std::vector<Scalar> rem = c_;
    std::vector<Scalar> q(c_.size() - d.c_.size() + 1);
    Scalar inv = d.lc().inverse();
    int dd = d.degree();
    for (int k = degree(); k >= dd; --k) {
        if (rem[k].is_zero()) continue;
        Scalar f = rem[k] * inv;
        q[k - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
    }
    rem.resize(dd);
    return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly Poly::pow(int e) const {
    if (e < 0) throw InvalidArgument("negative polynomial power");
    Poly r(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Scalar> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Scalar(static_cast<long>(i)) * c_[i];
    return Poly(std::move(r));
}

Scalar Poly::eval(const Scalar& x) const {
    Scalar acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::shift(const Scalar& c) const {
    // Horner in polynomial arithmetic: p(x+c).
    Poly r, xc(std::vector<Scalar>{c, Scalar(1)});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * xc + Poly(*it);
    return r;
}

Poly Poly::reversed() const { return Poly(std::vector<Scalar>(c_.rbegin(), c_.rend())); }

bool Poly::is_rational() const {
    for (auto& c : c_)
        if (!c.is_rational()) return false;
    return true;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const Scalar& c = c_[k];
        if (c.is_zero()) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        std::string cs = c.str();
        bool simple = c.is_rational();
        bool neg = simple && c.to_rational() < 0;
        std::string mag = neg ? cs.substr(1) : cs;
        if (!simple) mag = "(" + cs + ")";
        std::string term;
        if (mono.empty())
            term = mag;
        else if (mag == "1")
            term = mono;
        else
            term = mag + "*" + mono;
        if (out.empty())
            out = (neg ? "-" : "") + term;
        else
            out += (neg ? "-" : "+") + term;
    }
    return out;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x.divmod(y).second;
        x = std::move(y);
        y = r.is_zero() ? r : r.monic();
    }
    return x.monic();
}

std::vector<std::pair<Poly, int>> squarefree_factorization(const Poly& p) {
    // Yun's algorithm over a field of characteristic zero.
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() < 1) return out;
    Poly f = p.monic();
    Poly fp = f.derivative();
    Poly a = poly_gcd(f, fp);
    Poly b = f.divmod(a).first;
    Poly c = fp.divmod(a).first;
    Poly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly g = poly_gcd(b, d);
        if (g.degree() > 0) out.emplace_back(g.monic(), i);
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

}  // namespace rg
