#include "rg/kovacic.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>

#include "rg/errors.hpp"

namespace rg {

namespace {

constexpr int kMaxCandidateDegree = 400;

const Scalar kHalf = Scalar::frac(1, 2);

std::string point_name(const PoleData& p) { return p.at_infinity() ? "inf" : p.c->str(); }

Scalar coeff_minus_two(const RatFunc& r, const PoleData& p) {
    if (r.is_zero()) return Scalar();
    if (p.at_infinity()) return expand(r, p, 2).at(2);
    return expand(r, p, -2).at(-2);
}

/// sqrt(1 + 4b) when it is rational; only then can k != 0 entries of an E-set be integers.
std::optional<Scalar> rational_root(const Scalar& b) {
    Scalar d = Scalar(1) + Scalar(4) * b;
    if (!d.is_rational()) return std::nullopt;
    Rational q = d.to_rational();
    if (q < 0 || !mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return std::nullopt;
    return d.sqrt();
}

bool nonneg_integer(const Scalar& s) { return s.is_integer() && s.to_rational() >= 0; }

int to_int(const Scalar& s) {
    if (!s.is_integer()) throw InvalidArgument("not an integer: " + s.str());
    Integer z = s.to_rational().get_num();
    if (z > kMaxCandidateDegree) throw Unsupported("candidate degree " + z.get_str() + " exceeds the search limit");
    return static_cast<int>(z.get_si());
}

std::vector<Scalar> integer_subset(const std::vector<Scalar>& v) {
    std::vector<Scalar> out;
    for (auto& s : v)
        if (s.is_integer() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Scalar> spread(const Scalar& centre, const std::optional<Scalar>& step, const std::vector<int>& ks) {
    if (!step) return {centre};
    std::vector<Scalar> v;
    for (int k : ks) v.push_back(centre + Scalar(k) * *step);
    return integer_subset(v);
}

/// Monic P of degree m with op(P) = 0, op linear with polynomial values.
struct MonicSolution {
    Poly p;
    int nullity = 0;
};

std::optional<MonicSolution> solve_monic(int m, const std::function<Poly(const Poly&)>& op) {
    std::vector<Poly> img;
    int rows = 0;
    for (int k = 0; k <= m; ++k) {
        img.push_back(op(Poly::monomial(Scalar(1), k)));
        rows = std::max(rows, img.back().degree() + 1);
    }
    if (m == 0) {
        if (!img[0].is_zero()) return std::nullopt;
        return MonicSolution{Poly(1), 0};
    }
    if (rows == 0) return MonicSolution{Poly::monomial(Scalar(1), m), m};
    Matrix A(rows, std::vector<Scalar>(m));
    std::vector<Scalar> rhs(rows);
    for (int i = 0; i < rows; ++i) {
        for (int k = 0; k < m; ++k) A[i][k] = img[k].coeff(i);
        rhs[i] = -img[m].coeff(i);
    }
    auto sol = linear_solve(A, rhs);
    if (!sol) return std::nullopt;
    std::vector<Scalar> c(sol->x);
    c.push_back(Scalar(1));
    Poly p(c);
    if (!op(p).is_zero()) throw VerificationFailure("monic solve produced a non-solution");
    return MonicSolution{p, static_cast<int>(sol->nullspace.size())};
}

Poly lcm(const Poly& a, const Poly& b) { return (a * b).divmod(poly_gcd(a, b)).first.monic(); }

Poly require_poly(const RatFunc& f) {
    if (!f.is_poly()) throw VerificationFailure("expected a polynomial, got " + f.str());
    return f.num();
}

/// Linear operator sum coeffs[k] P^(k), scaled by the lcm of denominators.
std::function<Poly(const Poly&)> cleared_operator(const std::vector<RatFunc>& coeffs) {
    Poly d(1);
    for (auto& c : coeffs) d = lcm(d, c.den());
    std::vector<Poly> pc;
    for (auto& c : coeffs) pc.push_back(require_poly(c * RatFunc(d)));
    return [pc](const Poly& p) {
        Poly acc, dp = p;
        for (std::size_t k = 0; k < pc.size(); ++k) {
            acc += pc[k] * dp;
            dp = dp.derivative();
        }
        return acc;
    };
}

std::vector<RatFunc> case1_operator(const RatFunc& r, const RatFunc& omega) {
    return {omega.derivative() + omega * omega - r, RatFunc(2) * omega, RatFunc(1)};
}

std::vector<RatFunc> case2_operator(const RatFunc& r, const RatFunc& t) {
    RatFunc t1 = t.derivative(), t2 = t1.derivative();
    RatFunc three(3), four(4);
    return {t2 + three * t * t1 + t * t * t - four * r * t - RatFunc(2) * r.derivative(),
            three * t1 + three * t * t - four * r, three * t, RatFunc(1)};
}

/// P_{-1} .. P_n (shifted by one) from P_n = -P.
std::vector<Poly> case3_chain(const RatFunc& r, int n, const RatFunc& theta, const Poly& s, const Poly& p,
                              bool negated_middle_term = false) {
    std::vector<Poly> chain(n + 2);
    chain[n + 1] = -p;
    RatFunc S(s), Sp(s.derivative()), St = S * theta, S2r = S * S * r;
    for (int i = n; i >= 0; --i) {
        const Poly& Pi = chain[i + 1];
        Poly Pnext = (i + 1 <= n) ? chain[i + 2] : Poly();
        RatFunc mid = (RatFunc(n - i) * Sp - St) * RatFunc(Pi);
        RatFunc v = -S * RatFunc(Pi.derivative()) + (negated_middle_term ? -mid : mid) -
                    RatFunc((n - i) * (i + 1)) * S2r * RatFunc(Pnext);
        chain[i] = require_poly(v);
    }
    return chain;
}

/// Cartesian product over E-sets, m = scale*(e_inf - sum e_c), in trial order.
std::vector<Candidate> product_candidates(const std::vector<std::vector<Scalar>>& sets, const Scalar& scale, int n) {
    std::vector<Candidate> out;
    std::size_t k = sets.size();
    for (auto& s : sets)
        if (s.empty()) return out;
    std::vector<std::size_t> idx(k, 0);
    for (bool more = true; more;) {
        Scalar sum;
        for (std::size_t i = 0; i + 1 < k; ++i) sum += sets[i][idx[i]];
        Scalar m = scale * (sets[k - 1][idx[k - 1]] - sum);
        if (nonneg_integer(m)) {
            Candidate c;
            c.m = to_int(m);
            c.n = n;
            for (std::size_t i = 0; i < k; ++i) c.e.push_back(sets[i][idx[i]]);
            out.push_back(c);
        }
        more = false;
        for (std::size_t j = k; j-- > 0;) {
            if (++idx[j] < sets[j].size()) {
                more = true;
                break;
            }
            idx[j] = 0;
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) { return a.m < b.m; });
    return out;
}

RatFunc theta_of(const std::vector<LocalData>& ld, const Candidate& c, const Scalar& scale) {
    RatFunc t;
    for (std::size_t i = 0; i + 1 < ld.size(); ++i) t += RatFunc(scale * c.e[i]) * pole_term(*ld[i].point.c, 1);
    return t;
}

std::string describe(const Candidate& c) {
    std::string s = "m=" + std::to_string(c.m);
    if (!c.signs.empty()) s += " signs=" + c.signs;
    if (!c.e.empty()) {
        s += " e=(";
        for (std::size_t i = 0; i < c.e.size(); ++i) s += (i ? "," : "") + c.e[i].str();
        s += ")";
    }
    if (c.n) s += " n=" + std::to_string(c.n);
    return s;
}

/// Fresh tower holding the radicals already present in r.
struct ScopeFor {
    TowerScope scope;
    explicit ScopeFor(const RatFunc& r) {
        for (auto& c : r.num().coeffs()) Tower::absorb(c);
        for (auto& c : r.den().coeffs()) Tower::absorb(c);
    }
};

void log(std::vector<std::string>* trace, const std::string& s) {
    if (trace) trace->push_back(s);
}

RatFunc case1_omega(const std::vector<LocalData>& ld, const std::string& signs) {
    RatFunc w;
    for (std::size_t i = 0; i < ld.size(); ++i) {
        const Case1Local& c = *ld[i].case1;
        bool plus = signs[i] == '+';
        RatFunc head = c.head.to_ratfunc();
        w += plus ? head : -head;
        if (!ld[i].point.at_infinity())
            w += RatFunc(plus ? c.alpha_plus : c.alpha_minus) * pole_term(*ld[i].point.c, 1);
    }
    return w;
}

std::vector<Case1Result> run_case1(const RatFunc& r, bool all, std::vector<std::string>* trace, int* trials) {
    ScopeFor scope(r);
    std::vector<Case1Result> found;
    auto ld = local_data(r);
    for (auto& l : ld) {
        if (!l.case1) {
            log(trace, "case1: point " + point_name(l.point) + " of order " + std::to_string(l.point.order) +
                           " rules out case 1");
            return found;
        }
        log(trace, "case1: point " + point_name(l.point) + " " + l.case1->subcase + " [sqrt r]=" +
                       l.case1->head.to_ratfunc().str() + " alpha+=" + l.case1->alpha_plus.str() +
                       " alpha-=" + l.case1->alpha_minus.str());
    }
    auto cands = case1_candidates(ld);
    log(trace, "case1: " + std::to_string(cands.size()) + " candidates");
    std::vector<std::pair<int, RatFunc>> seen;
    for (auto& c : cands) {
        RatFunc omega = case1_omega(ld, c.signs);
        bool dup = false;
        for (auto& [m, w] : seen) dup = dup || (m == c.m && w == omega);
        if (dup) continue;
        seen.emplace_back(c.m, omega);
        if (trials) ++*trials;
        auto sol = solve_monic(c.m, cleared_operator(case1_operator(r, omega)));
        if (!sol) {
            log(trace, "case1: " + describe(c) + " omega=" + omega.str() + " no polynomial");
            continue;
        }
        if (!verify_case1(r, omega, sol->p)) throw VerificationFailure("case 1 identity fails");
        log(trace, "case1: " + describe(c) + " omega=" + omega.str() + " P=" + sol->p.str());
        Case1Result res{omega, sol->p, c, sol->nullity};
        bool dup_w = false;
        for (auto& f : found) dup_w = dup_w || (f.riccati_solution() == res.riccati_solution() && f.nullity == res.nullity);
        if (!dup_w) found.push_back(res);
        if (!all) break;
    }
    return found;
}

}  // namespace

RatFunc Case1Result::riccati_solution() const { return omega + RatFunc(p.derivative(), p); }

Formal Case1Result::solution() const {
    return Formal::mul({Formal::rat(RatFunc(p)), Formal::exp(Formal::integral(Formal::rat(omega)))});
}

LocalData classify_point_case1(const RatFunc& r, const PoleData& p) {
    LocalData ld;
    ld.point = p;
    ld.b2 = coeff_minus_two(r, p);
    Case1Local c;
    if (!p.at_infinity()) {
        int o = p.order;
        if (o == 0) {
            c.subcase = "c0";
        } else if (o == 1) {
            c.subcase = "c1";
            c.alpha_plus = c.alpha_minus = Scalar(1);
        } else if (o == 2) {
            c.subcase = "c2";
            Scalar s = (Scalar(1) + Scalar(4) * ld.b2).sqrt();
            c.alpha_plus = (Scalar(1) + s) * kHalf;
            c.alpha_minus = (Scalar(1) - s) * kHalf;
        } else if (o % 2 == 0) {
            c.subcase = "c3";
            c.head = sqrt_laurent(r, p);
            Scalar q = c.head.b / c.head.leading, v(c.head.v);
            c.alpha_plus = (q + v) * kHalf;
            c.alpha_minus = (-q + v) * kHalf;
        } else {
            return ld;
        }
        ld.case1 = c;
        return ld;
    }
    int o = r.order_at_infinity();
    if (o > 2) {
        c.subcase = "inf1";
        c.alpha_plus = Scalar(0);
        c.alpha_minus = Scalar(1);
    } else if (o == 2) {
        c.subcase = "inf2";
        Scalar s = (Scalar(1) + Scalar(4) * ld.b2).sqrt();
        c.alpha_plus = (Scalar(1) + s) * kHalf;
        c.alpha_minus = (Scalar(1) - s) * kHalf;
    } else if (o % 2 == 0) {
        c.subcase = "inf3";
        PoleData q = p;
        q.order = o;
        c.head = sqrt_laurent(r, q);
        Scalar t = c.head.b / c.head.leading, v(c.head.v);
        c.alpha_plus = (t - v) * kHalf;
        c.alpha_minus = (-t - v) * kHalf;
    } else {
        return ld;
    }
    ld.case1 = c;
    return ld;
}

std::vector<LocalData> local_data(const RatFunc& r) {
    std::vector<LocalData> out;
    for (auto& p : find_poles(r)) {
        LocalData ld;
        try {
            ld = classify_point_case1(r, p);
        } catch (const OddLeadingOrder&) {
            ld.point = p;
            ld.b2 = coeff_minus_two(r, p);
        }
        int o = p.at_infinity() ? r.order_at_infinity() : p.order;
        std::optional<Scalar> s = rational_root(ld.b2);
        if (!p.at_infinity()) {
            if (o == 1) {
                ld.case2 = std::vector<Scalar>{Scalar(4)};
                ld.case3 = std::vector<Scalar>{Scalar(12)};
            } else if (o == 2) {
                ld.case2 = spread(Scalar(2), s, {0, 2, -2});
                ld.case3 = spread(Scalar(6), s, {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6});
            } else {
                ld.case2 = std::vector<Scalar>{Scalar(o)};
            }
        } else {
            if (o > 2)
                ld.case2 = std::vector<Scalar>{Scalar(0), Scalar(2), Scalar(4)};
            else if (o == 2)
                ld.case2 = spread(Scalar(2), s, {0, 2, -2});
            else
                ld.case2 = std::vector<Scalar>{Scalar(o)};
        }
        out.push_back(ld);
    }
    return out;
}

std::vector<Scalar> case3_E_infinity(const LocalData& inf, int n) {
    auto s = rational_root(inf.b2);
    if (s) s = Scalar::frac(12, n) * *s;
    return spread(Scalar(6), s, {0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6});
}

std::vector<Candidate> case1_candidates(const std::vector<LocalData>& ld) {
    std::vector<Candidate> out;
    std::size_t k = ld.size();
    if (k > 20) throw Unsupported("too many singular points for case 1 enumeration");
    for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
        std::string signs;
        Scalar m;
        for (std::size_t i = 0; i < k; ++i) {
            bool plus = !((mask >> (k - 1 - i)) & 1UL);
            signs.push_back(plus ? '+' : '-');
            const Case1Local& c = *ld[i].case1;
            Scalar a = plus ? c.alpha_plus : c.alpha_minus;
            if (ld[i].point.at_infinity())
                m += a;
            else
                m -= a;
        }
        if (!nonneg_integer(m)) continue;
        Candidate c;
        c.m = to_int(m);
        c.signs = signs;
        out.push_back(c);
    }
    std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return a.m != b.m ? a.m < b.m : a.signs < b.signs;
    });
    return out;
}

std::optional<Case1Result> case1(const RatFunc& r, std::vector<std::string>* trace, int* trials) {
    auto f = run_case1(r, false, trace, trials);
    if (f.empty()) return std::nullopt;
    return f.front();
}

std::vector<Case1Result> case1_all(const RatFunc& r) { return run_case1(r, true, nullptr, nullptr); }

std::optional<Case2Result> case2(const RatFunc& r, std::vector<std::string>* trace, int* trials) {
    ScopeFor scope(r);
    auto ld = local_data(r);
    std::vector<std::vector<Scalar>> sets;
    for (auto& l : ld) {
        sets.push_back(l.case2 ? *l.case2 : std::vector<Scalar>{});
        std::string s;
        for (auto& e : sets.back()) s += (s.empty() ? "" : ",") + e.str();
        log(trace, "case2: E_" + point_name(l.point) + "={" + s + "}");
    }
    auto cands = product_candidates(sets, kHalf, 0);
    log(trace, "case2: " + std::to_string(cands.size()) + " candidates");
    for (auto& c : cands) {
        RatFunc theta = theta_of(ld, c, kHalf);
        if (trials) ++*trials;
        auto sol = solve_monic(c.m, cleared_operator(case2_operator(r, theta)));
        if (!sol) {
            log(trace, "case2: " + describe(c) + " no polynomial");
            continue;
        }
        Case2Result res;
        res.theta = theta;
        res.p = sol->p;
        res.phi = theta + RatFunc(sol->p.derivative(), sol->p);
        res.c1 = -res.phi;
        res.c0 = RatFunc(kHalf) * (res.phi.derivative() + res.phi * res.phi) - r;
        res.candidate = c;
        auto [u, v] = riccati_quadratic_residue(r, res.c1, res.c0);
        if (!verify_case2(r, theta, sol->p) || !u.is_zero() || !v.is_zero())
            throw VerificationFailure("case 2 identities fail");
        log(trace, "case2: " + describe(c) + " theta=" + theta.str() + " P=" + sol->p.str());
        return res;
    }
    return std::nullopt;
}

std::optional<Case3Result> case3(const RatFunc& r, std::vector<std::string>* trace, int* trials,
                                 const Case3Options& opt) {
    ScopeFor scope(r);
    auto ld = local_data(r);
    for (auto& l : ld) {
        bool ok = l.point.at_infinity() ? r.order_at_infinity() >= 2 : l.point.order <= 2;
        if (!ok) {
            log(trace, "case3: point " + point_name(l.point) + " has an order outside the case 3 conditions");
            return std::nullopt;
        }
    }
    Poly s(1);
    for (std::size_t i = 0; i + 1 < ld.size(); ++i) s = s * Poly(std::vector<Scalar>{-*ld[i].point.c, Scalar(1)});
    for (int n : {4, 6, 12}) {
        std::vector<std::vector<Scalar>> sets;
        for (std::size_t i = 0; i + 1 < ld.size(); ++i) sets.push_back(*ld[i].case3);
        sets.push_back(case3_E_infinity(ld.back(), n));
        Scalar scale = Scalar::frac(n, 12);
        auto cands = product_candidates(sets, scale, n);
        log(trace, "case3: n=" + std::to_string(n) + " " + std::to_string(cands.size()) + " candidates");
        std::vector<std::pair<int, RatFunc>> seen;
        for (auto& c : cands) {
            RatFunc theta = theta_of(ld, c, scale);
            bool dup = false;
            for (auto& [m, t] : seen) dup = dup || (m == c.m && t == theta);
            if (dup) continue;
            seen.emplace_back(c.m, theta);
            if (trials) ++*trials;
            auto op = [&](const Poly& p) { return case3_chain(r, n, theta, s, p, opt.negated_middle_term)[0]; };
            auto sol = solve_monic(c.m, op);
            if (!sol) {
                log(trace, "case3: " + describe(c) + " no polynomial");
                continue;
            }
            if (case3_chain(r, n, theta, s, sol->p, opt.negated_middle_term)[0] != Poly())
                throw VerificationFailure("case 3 recursion does not close");
            Case3Result res;
            res.n = n;
            res.theta = theta;
            res.s = s;
            res.p = sol->p;
            res.chain = case3_chain(r, n, theta, s, sol->p, opt.negated_middle_term);
            res.candidate = c;
            std::vector<Integer> facts{1};
            for (int i = 1; i <= n; ++i) facts.push_back(facts.back() * i);
            for (int i = 0; i <= n; ++i)
                res.omega_polynomial.push_back(RatFunc(s.pow(i) * res.chain[i + 1]) *
                                               RatFunc(Scalar(Rational(1) / Rational(facts[n - i]))));
            log(trace, "case3: " + describe(c) + " theta=" + theta.str() + " P=" + sol->p.str());
            return res;
        }
    }
    return std::nullopt;
}

KovacicResult solve_rlde(const ReducedODE& e) {
    KovacicResult res;
    res.r = e.rho;
    res.trace.push_back("rlde: r=" + e.rho.str());
    if (auto c1 = case1(e.rho, &res.trace, &res.trials[0])) {
        res.kase = 1;
        res.case1 = c1;
    } else if (auto c2 = case2(e.rho, &res.trace, &res.trials[1])) {
        res.kase = 2;
        res.case2 = c2;
    } else if (auto c3 = case3(e.rho, &res.trace, &res.trials[2])) {
        res.kase = 3;
        res.case3 = c3;
    } else {
        res.kase = 4;
    }
    res.trace.push_back("rlde: case " + std::to_string(res.kase));
    return res;
}

Formal second_solution(const Case1Result& res) {
    Formal u = Formal::mul({Formal::exp(Formal::integral(Formal::rat(RatFunc(-2) * res.omega))),
                            Formal::pow(Formal::rat(RatFunc(res.p)), Scalar(-2))});
    return Formal::mul({res.solution(), Formal::integral(u)});
}

bool verify_case1(const RatFunc& r, const RatFunc& omega, const Poly& p) {
    RatFunc P(p), P1(p.derivative()), P2(p.derivative().derivative());
    return (P2 + RatFunc(2) * omega * P1 + (omega.derivative() + omega * omega - r) * P).is_zero();
}

bool verify_case2(const RatFunc& r, const RatFunc& theta, const Poly& p) {
    auto c = case2_operator(r, theta);
    RatFunc acc;
    Poly d = p;
    for (auto& k : c) {
        acc += k * RatFunc(d);
        d = d.derivative();
    }
    return acc.is_zero();
}

std::pair<RatFunc, RatFunc> riccati_quadratic_residue(const RatFunc& r, const RatFunc& c1, const RatFunc& c0) {
    // omega' = -(c1' omega + c0') / (2 omega + c1); multiply through by 2 omega + c1 and reduce.
    const RatFunc& p = c1;
    const RatFunc& q = c0;
    RatFunc u = p * p - RatFunc(2) * q - RatFunc(2) * r - p.derivative();
    RatFunc v = p * q - p * r - q.derivative();
    return {u, v};
}

bool verify_case3(const RatFunc& r, int n, const RatFunc& theta, const Poly& s, const Poly& p) {
    return case3_chain(r, n, theta, s, p)[0].is_zero();
}

bool verify(const KovacicResult& res) {
    switch (res.kase) {
        case 1:
            return verify_case1(res.r, res.case1->omega, res.case1->p);
        case 2: {
            auto [u, v] = riccati_quadratic_residue(res.r, res.case2->c1, res.case2->c0);
            return verify_case2(res.r, res.case2->theta, res.case2->p) && u.is_zero() && v.is_zero();
        }
        case 3:
            return verify_case3(res.r, res.case3->n, res.case3->theta, res.case3->s, res.case3->p);
        default:
            return true;
    }
}

}  // namespace rg
