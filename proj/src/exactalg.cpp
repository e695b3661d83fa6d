#include "rg/exactalg.hpp"

#include <algorithm>
#include <climits>

namespace rg {

std::string PoleData::str() const {
    if (at_infinity()) return "infinity (order " + std::to_string(order) + ")";
    return c->str() + " (order " + std::to_string(order) + ")";
}

// ---------------------------------------------------------------- series

Scalar Series::at(int e) const {
    if (e < val) return Scalar();
    if (e > last()) throw InvalidArgument("series coefficient beyond truncation order");
    return coeff[static_cast<std::size_t>(e - val)];
}

namespace {

int low_index(const Poly& p) {
    for (int k = 0; k <= p.degree(); ++k)
        if (!p.coeff(k).is_zero()) return k;
    return INT_MAX;
}

// Power series quotient a/b with b(0) != 0, n terms.
std::vector<Scalar> ps_div(const std::vector<Scalar>& a, const std::vector<Scalar>& b, int n) {
    std::vector<Scalar> q(static_cast<std::size_t>(std::max(n, 0)));
    Scalar inv = b[0].inverse();
    for (int k = 0; k < n; ++k) {
        Scalar s = k < static_cast<int>(a.size()) ? a[k] : Scalar();
        for (int j = 1; j <= k && j < static_cast<int>(b.size()); ++j) s -= b[j] * q[k - j];
        q[k] = s * inv;
    }
    return q;
}

std::vector<Scalar> drop_low(const Poly& p, int k) {
    std::vector<Scalar> out;
    for (int i = k; i <= p.degree(); ++i) out.push_back(p.coeff(i));
    return out;
}

}  // namespace

Series expand(const RatFunc& r, const PoleData& at, int upto) {
    Series s;
    if (r.is_zero()) {
        s.val = upto + 1;
        return s;
    }
    std::vector<Scalar> a, b;
    if (at.at_infinity()) {
        s.val = r.den().degree() - r.num().degree();
        a = r.num().reversed().coeffs();
        b = r.den().reversed().coeffs();
    } else {
        Poly n = r.num().shift(*at.c), d = r.den().shift(*at.c);
        int vn = low_index(n), vd = low_index(d);
        s.val = vn - vd;
        a = drop_low(n, vn);
        b = drop_low(d, vd);
    }
    s.coeff = ps_div(a, b, upto - s.val + 1);
    return s;
}

Series series_mul(const Series& a, const Series& b) {
    Series r;
    r.val = a.val + b.val;
    std::size_t n = std::min(a.coeff.size(), b.coeff.size());
    r.coeff.assign(n, Scalar());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j) r.coeff[i + j] += a.coeff[i] * b.coeff[j];
    return r;
}

Series series_sub(const Series& a, const Series& b) {
    Series r;
    r.val = std::min(a.val, b.val);
    int hi = std::min(a.last(), b.last());
    for (int e = r.val; e <= hi; ++e) r.coeff.push_back(a.at(e) - b.at(e));
    return r;
}

Series series_sqrt(const Series& s) {
    std::size_t k0 = 0;
    while (k0 < s.coeff.size() && s.coeff[k0].is_zero()) ++k0;
    if (k0 == s.coeff.size()) throw InvalidArgument("square root of a series with unknown leading term");
    int v = s.val + static_cast<int>(k0);
    if (v % 2 != 0) throw OddLeadingOrder("series has odd leading exponent " + std::to_string(v));
    std::size_t n = s.coeff.size() - k0;
    Scalar a0 = s.coeff[k0];
    Scalar inv = a0.inverse();
    std::vector<Scalar> u(n), g(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = s.coeff[k0 + i] * inv;
    g[0] = Scalar(1);
    for (std::size_t k = 1; k < n; ++k) {
        Scalar acc = u[k];
        for (std::size_t i = 1; i < k; ++i) acc -= g[i] * g[k - i];
        g[k] = acc * Scalar::frac(1, 2);
    }
    Scalar root = a0.sqrt();
    Series r;
    r.val = v / 2;
    for (auto& x : g) r.coeff.push_back(root * x);
    return r;
}

RatFunc LaurentHead::to_ratfunc() const {
    RatFunc out;
    for (auto& [e, c] : terms) {
        if (center)
            out += RatFunc(c) * pole_term(*center, -e);
        else
            out += RatFunc(Poly::monomial(c, e));
    }
    return out;
}

LaurentHead sqrt_laurent(const RatFunc& r, const PoleData& at, int depth) {
    LaurentHead h;
    h.center = at.c;
    if (at.at_infinity()) {
        int o = at.order;
        if (o > 0) throw InvalidArgument("sqrt_laurent at infinity needs order <= 0");
        if (o % 2 != 0) throw OddLeadingOrder("odd order at infinity");
        int v = -o / 2;
        h.v = v;
        int upto = std::max(1 - v, depth - v);
        Series rs = expand(r, at, upto);
        Series sq = series_sqrt(rs);
        Series head;
        head.val = -v;
        for (int e = -v; e <= 0; ++e) {
            Scalar c = sq.at(e);
            head.coeff.push_back(c);
            if (!c.is_zero()) h.terms[-e] = c;
        }
        for (int e = 1; e <= depth; ++e) {
            Scalar c = sq.at(e);
            if (!c.is_zero()) h.tail[-e] = c;
        }
        h.leading = sq.at(-v);
        Scalar sq_coeff;
        int target = 1 - v;
        for (int i = -v; i <= 0; ++i) {
            int j = target - i;
            if (j >= -v && j <= 0) sq_coeff += head.at(i) * head.at(j);
        }
        h.b = rs.at(target) - sq_coeff;
        return h;
    }
    int o = at.order;
    if (o % 2 != 0) throw OddLeadingOrder("odd pole order " + std::to_string(o));
    if (o < 2) throw InvalidArgument("sqrt_laurent at a finite point needs an even pole order");
    int v = o / 2;
    h.v = v;
    int upto = std::max(-v - 1, depth - v - 2);
    Series rs = expand(r, at, upto);
    Series sq = series_sqrt(rs);
    std::map<int, Scalar> head;
    for (int e = -v; e <= -2; ++e) {
        Scalar c = sq.at(e);
        head[e] = c;
        if (!c.is_zero()) h.terms[e] = c;
    }
    for (int e = -1; e <= depth - 2; ++e) {
        Scalar c = sq.at(e);
        if (!c.is_zero()) h.tail[e] = c;
    }
    h.leading = sq.at(-v);
    Scalar sq_coeff;
    int target = -(v + 1);
    for (auto& [i, ci] : head) {
        auto it = head.find(target - i);
        if (it != head.end()) sq_coeff += ci * it->second;
    }
    h.b = rs.at(target) - sq_coeff;
    return h;
}

// ---------------------------------------------------------------- roots

namespace {

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    if (n == 0) return {};
    if (n > Integer("1000000000000000000")) throw Unsupported("coefficient too large for rational root search");
    std::vector<std::pair<Integer, int>> fac;
    Integer m = n;
    for (unsigned long p = 2; m > 1; p += (p == 2 ? 1 : 2)) {
        Integer pp = p;
        if (pp * pp > m) {
            fac.emplace_back(m, 1);
            break;
        }
        if (p > 10000000UL) throw Unsupported("coefficient too large for rational root search");
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            ++e;
        }
        if (e) fac.emplace_back(pp, e);
    }
    std::vector<Integer> out{1};
    for (auto& [p, e] : fac) {
        std::size_t sz = out.size();
        Integer pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Roots of a monic square-free polynomial.
std::vector<Scalar> split_squarefree(Poly f) {
    std::vector<Scalar> roots;
    if (f.is_rational() && f.degree() >= 3) {
        Integer l = 1;
        for (auto& c : f.coeffs()) l = lcm(l, Integer(c.to_rational().get_den()));
        std::vector<Integer> ic;
        for (auto& c : f.coeffs()) ic.push_back(Integer(c.to_rational() * l));
        if (ic[0] == 0) {
            roots.push_back(Scalar(0));
            f = f.divmod(Poly::x()).first;
            ic.erase(ic.begin());
        }
        if (!f.is_constant()) {
            auto ps = divisors(ic.front());
            auto qs = divisors(ic.back());
            for (auto& p : ps)
                for (auto& q : qs)
                    for (int sgn : {1, -1}) {
                        if (f.degree() <= 2) break;
                        Rational cand(sgn * p, q);
                        cand.canonicalize();
                        if (cand.get_den() != q) continue;
                        Scalar sc(cand);
                        if (f.eval(sc).is_zero()) {
                            roots.push_back(sc);
                            f = f.divmod(Poly(std::vector<Scalar>{-sc, Scalar(1)})).first;
                        }
                    }
        }
    }
    if (f.degree() == 1) {
        roots.push_back(-f.coeff(0) / f.coeff(1));
    } else if (f.degree() == 2) {
        Scalar a = f.coeff(2), b = f.coeff(1), c = f.coeff(0);
        Scalar disc = b * b - Scalar(4) * a * c;
        Scalar s = disc.sqrt();
        roots.push_back((-b + s) / (Scalar(2) * a));
        roots.push_back((-b - s) / (Scalar(2) * a));
    } else if (f.degree() >= 3) {
        throw Unsupported("irreducible factor of degree " + std::to_string(f.degree()) + ": " + f.str());
    }
    return roots;
}

}  // namespace

std::vector<std::pair<Scalar, int>> poly_roots(const Poly& p) {
    std::vector<std::pair<Scalar, int>> out;
    for (auto& [f, k] : squarefree_factorization(p))
        for (auto& r : split_squarefree(f)) out.emplace_back(r, k);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

std::vector<PoleData> find_poles(const RatFunc& r) {
    std::vector<PoleData> out;
    for (auto& [c, k] : poly_roots(r.den())) out.push_back(PoleData{c, k});
    out.push_back(PoleData{std::nullopt, r.order_at_infinity()});
    return out;
}

// ---------------------------------------------------------------- linear algebra

std::optional<LinearSolution> linear_solve(const Matrix& A, const std::vector<Scalar>& rhs) {
    std::size_t n = A.size();
    if (rhs.size() != n) throw InvalidArgument("linear_solve: rhs size mismatch");
    std::size_t m = n ? A[0].size() : 0;
    Matrix M = A;
    for (std::size_t i = 0; i < n; ++i) {
        if (M[i].size() != m) throw InvalidArgument("linear_solve: ragged matrix");
        M[i].push_back(rhs[i]);
    }
    Scalar prev(1);
    std::size_t row = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && M[piv][col].is_zero()) ++piv;
        if (piv == n) continue;
        std::swap(M[piv], M[row]);
        const Scalar p = M[row][col];
        for (std::size_t i = row + 1; i < n; ++i) {
            const Scalar f = M[i][col];
            for (std::size_t j = col + 1; j <= m; ++j) {
                Scalar v = p * M[i][j];
                if (!f.is_zero()) v -= f * M[row][j];
                M[i][j] = prev.is_one() ? v : v / prev;
            }
            M[i][col] = Scalar();
        }
        prev = p;
        pivots.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (!M[i][m].is_zero()) return std::nullopt;

    std::vector<bool> is_pivot(m, false);
    for (auto c : pivots) is_pivot[c] = true;
    auto back_substitute = [&](std::vector<Scalar> y, bool with_rhs) {
        for (std::size_t k = pivots.size(); k-- > 0;) {
            std::size_t c = pivots[k];
            Scalar s = with_rhs ? M[k][m] : Scalar();
            for (std::size_t j = c + 1; j < m; ++j)
                if (!y[j].is_zero() && !M[k][j].is_zero()) s -= M[k][j] * y[j];
            y[c] = s / M[k][c];
        }
        return y;
    };
    LinearSolution sol;
    sol.x = back_substitute(std::vector<Scalar>(m), true);
    for (std::size_t f = 0; f < m; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Scalar> y(m);
        y[f] = Scalar(1);
        sol.nullspace.push_back(back_substitute(y, false));
    }
    return sol;
}

Scalar determinant(Matrix M) {
    std::size_t n = M.size();
    if (n == 0) return Scalar(1);
    Scalar prev(1);
    bool neg = false;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && M[piv][k].is_zero()) ++piv;
        if (piv == n) return Scalar();
        if (piv != k) {
            std::swap(M[piv], M[k]);
            neg = !neg;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) / prev;
            M[i][k] = Scalar();
        }
        prev = M[k][k];
    }
    return neg ? -M[n - 1][n - 1] : M[n - 1][n - 1];
}

// ---------------------------------------------------------------- partial fractions

RatFunc PartialFractions::to_ratfunc() const {
    RatFunc out(polynomial);
    for (auto& t : terms) out += RatFunc(t.coeff) * pole_term(t.c, t.k);
    return out;
}

PartialFractions partial_fractions(const RatFunc& f) {
    PartialFractions pf;
    pf.polynomial = f.num().divmod(f.den()).first;
    for (auto& [c, order] : poly_roots(f.den())) {
        PoleData at{c, order};
        Series s = expand(f, at, -1);
        for (int k = order; k >= 1; --k) {
            Scalar a = s.at(-k);
            if (!a.is_zero()) pf.terms.push_back({c, k, a});
        }
    }
    return pf;
}

}  // namespace rg
