#include "rg/specialfn.hpp"

#include <algorithm>
#include <array>

#include "rg/errors.hpp"
#include "rg/kovacic.hpp"

namespace rg {

namespace {

bool is_odd_integer(const Scalar& s) {
    if (!s.is_integer()) return false;
    return mpz_odd_p(s.to_rational().get_num_mpz_t()) != 0;
}

bool is_even_integer(const Scalar& s) { return s.is_integer() && !is_odd_integer(s); }

/// s in 1/2 + N.
bool in_half_plus_naturals(const Scalar& s, bool zero_in_n) {
    Scalar t = s - Scalar::frac(1, 2);
    if (!t.is_integer()) return false;
    Rational q = t.to_rational();
    return zero_in_n ? q >= 0 : q >= 1;
}

long to_long(const Scalar& s) { return s.to_rational().get_num().get_si(); }

std::string tuple_str(const std::vector<Scalar>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
    return s + ")";
}

struct KimuraRow {
    std::array<std::optional<Scalar>, 3> entries;
    bool parity;
};

const std::vector<KimuraRow>& kimura_rows() {
    auto F = [](long n, long d) { return std::optional<Scalar>(Scalar::frac(n, d)); };
    static const std::vector<KimuraRow> rows = {
        {{F(1, 2), F(1, 2), std::nullopt}, false}, {{F(1, 2), F(1, 3), F(1, 3)}, false},
        {{F(2, 3), F(1, 3), F(1, 3)}, true},       {{F(1, 2), F(1, 3), F(1, 4)}, false},
        {{F(2, 3), F(1, 4), F(1, 4)}, true},       {{F(1, 2), F(1, 3), F(1, 5)}, false},
        {{F(2, 5), F(1, 3), F(1, 3)}, true},       {{F(2, 3), F(1, 5), F(1, 5)}, true},
        {{F(1, 2), F(2, 5), F(1, 5)}, true},       {{F(3, 5), F(1, 3), F(1, 5)}, true},
        {{F(2, 5), F(2, 5), F(2, 5)}, true},       {{F(2, 3), F(1, 3), F(1, 5)}, true},
        {{F(4, 5), F(1, 5), F(1, 5)}, true},       {{F(1, 2), F(2, 5), F(1, 3)}, true},
        {{F(3, 5), F(2, 5), F(1, 3)}, true},
    };
    return rows;
}

/// Integer offsets (l, m, q) placing t in the row, or nullopt.
std::optional<std::vector<Scalar>> row_match(const KimuraRow& row, const std::array<Scalar, 3>& t) {
    std::vector<Scalar> off;
    Scalar sum;
    for (int j = 0; j < 3; ++j) {
        if (!row.entries[j]) continue;
        Scalar d = t[j] - *row.entries[j];
        if (!d.is_integer()) return std::nullopt;
        off.push_back(d);
        sum += d;
    }
    if (row.parity && !is_even_integer(sum)) return std::nullopt;
    return off;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Integrable:
            return "integrable";
        case Verdict::NotIntegrable:
            return "not integrable";
        case Verdict::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

ExponentDiffs ExponentDiffs::from_exponents(const Scalar& a, const Scalar& a1, const Scalar& b, const Scalar& b1,
                                            const Scalar& c, const Scalar& c1) {
    if (a + a1 + b + b1 + c + c1 != Scalar(1)) throw InvalidArgument("exponents violate the Fuchs relation (sum 1)");
    return ExponentDiffs{a - a1, b - b1, c - c1};
}

RatFunc WhittakerParams::rho() const {
    RatFunc x = RatFunc::x();
    return RatFunc(Scalar::frac(1, 4)) - RatFunc(kappa) / x +
           RatFunc(Scalar(4) * mu * mu - Scalar(1)) / (RatFunc(4) * x * x);
}

RatFunc BiconfluentParams::rho() const {
    RatFunc x = RatFunc::x();
    return x * x + RatFunc(delta1) * x + RatFunc(delta1 * delta1 / Scalar(4) - delta2) +
           RatFunc(delta3) / (RatFunc(2) * x) + RatFunc(delta0 * delta0 - Scalar(1)) / (RatFunc(4) * x * x);
}

Poly LameParams::f() const { return Poly(std::vector<Scalar>{-g3, -g2, Scalar(0), Scalar(4)}); }

SecondOrderODE LameParams::ode() const {
    RatFunc F(f());
    RatFunc x = RatFunc::x();
    return SecondOrderODE{F.derivative() / (RatFunc(2) * F), -(RatFunc(n * (n + Scalar(1))) * x + RatFunc(B)) / F};
}

std::optional<KimuraMatch> kimura_table_match(const ExponentDiffs& e, const std::vector<int>& rows) {
    const std::array<Scalar, 3> v = {e.lambda, e.mu, e.nu};
    const auto& table = kimura_rows();
    std::vector<int> which = rows;
    if (which.empty())
        for (std::size_t r = 1; r <= table.size(); ++r) which.push_back(static_cast<int>(r));
    for (int r : which) {
        if (r < 1 || r > static_cast<int>(table.size())) throw InvalidArgument("table rows are numbered 1..15");
        std::array<int, 3> perm = {0, 1, 2};
        do {
            for (int signs = 0; signs < 8; ++signs) {
                std::array<Scalar, 3> t;
                for (int j = 0; j < 3; ++j) t[j] = (signs >> j & 1) ? -v[perm[j]] : v[perm[j]];
                if (auto off = row_match(table[r - 1], t)) return KimuraMatch{r, {t[0], t[1], t[2]}, *off};
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

CriterionVerdict kimura_test(const ExponentDiffs& e) {
    CriterionVerdict out;
    out.criterion = "kimura";
    const Scalar& l = e.lambda;
    const Scalar& m = e.mu;
    const Scalar& n = e.nu;
    const std::array<std::pair<const char*, Scalar>, 4> sums = {{{"lambda+mu+nu", l + m + n},
                                                                  {"-lambda+mu+nu", -l + m + n},
                                                                  {"lambda-mu+nu", l - m + n},
                                                                  {"lambda+mu-nu", l + m - n}}};
    for (auto& [name, s] : sums)
        if (is_odd_integer(s)) {
            out.verdict = Verdict::Integrable;
            out.condition = "condition (i)";
            out.detail = std::string(name) + " = " + s.str() + " is odd";
            return out;
        }
    if (auto match = kimura_table_match(e)) {
        out.verdict = Verdict::Integrable;
        out.condition = "row " + std::to_string(match->row);
        out.detail = tuple_str(match->t) + " with offsets " + tuple_str(match->offsets);
        return out;
    }
    out.verdict = Verdict::NotIntegrable;
    out.detail = "no sum is an odd integer and no signed permutation matches a table row";
    return out;
}

CriterionVerdict martinet_ramis_test(const WhittakerParams& p, const MartinetRamisOptions& opt) {
    CriterionVerdict out;
    out.criterion = "martinet-ramis";
    const Scalar &k = p.kappa, &m = p.mu;
    const std::array<std::pair<const char*, Scalar>, 4> combos = {
        {{"kappa+mu", k + m}, {"kappa-mu", k - m}, {"-kappa+mu", -k + m}, {"-kappa-mu", -k - m}}};
    for (auto& [name, s] : combos)
        if (in_half_plus_naturals(s, opt.natural_includes_zero)) {
            out.verdict = Verdict::Integrable;
            out.condition = name;
            out.detail = std::string(name) + " = " + s.str() + " lies in 1/2 + N";
            return out;
        }
    out.verdict = Verdict::NotIntegrable;
    out.detail = "none of +-kappa+-mu lies in 1/2 + N";
    return out;
}

SecondOrderODE bessel_equation(const Scalar& n) {
    RatFunc x = RatFunc::x();
    return SecondOrderODE{RatFunc(1) / x, (x * x - RatFunc(n * n)) / (x * x)};
}

CriterionVerdict bessel_test(const Scalar& n) {
    CriterionVerdict out;
    out.criterion = "bessel";
    if ((n - Scalar::frac(1, 2)).is_integer()) {
        out.verdict = Verdict::Integrable;
        out.condition = "n in 1/2 + Z";
        out.detail = "n = " + n.str();
    } else {
        out.verdict = Verdict::NotIntegrable;
        out.detail = "n = " + n.str() + " is not a half-odd integer";
    }
    return out;
}

Matrix pi_matrix(int d, const Scalar& a, const Scalar& b, const Scalar& u, const Scalar& v, const Scalar& xi,
                 const Scalar& w, PiReading reading) {
    if (d < 0) throw InvalidArgument("pi_matrix needs d >= 0");
    std::size_t N = static_cast<std::size_t>(d) + 1;
    Matrix M(N, std::vector<Scalar>(N));
    for (int k = 0; k <= d; ++k) {
        M[k][k] = w + Scalar(k) * (v + Scalar(k - 1) * a);
        if (k < d) M[k][k + 1] = Scalar(k + 1) * (u + Scalar(k) * b);
        if (k > 0) M[k][k - 1] = Scalar(d - k + 1) * xi;
    }
    if (reading == PiReading::Literal && d >= 1) {
        M[1][0] = Scalar(d) * xi * w + Scalar(1);
        M[1][1] = v;
    }
    return M;
}

Scalar pi_determinant(int d, const Scalar& a, const Scalar& b, const Scalar& u, const Scalar& v, const Scalar& xi,
                      const Scalar& w, PiReading reading) {
    return determinant(pi_matrix(d, a, b, u, v, xi, w, reading));
}

CriterionVerdict biconfluent_heun_test(const BiconfluentParams& p, const BiconfluentOptions& opt) {
    CriterionVerdict out;
    out.criterion = "biconfluent-heun";
    const Scalar &d0 = p.delta0, &d1 = p.delta1, &d2 = p.delta2;
    const Scalar& d3 = p.delta3;
    Scalar half(Scalar::frac(1, 2));
    // u = 1 + eps0 d0 (2 when d0^2 = 1); a = 0, b = 1.
    auto pi = [&](int size, const Scalar& eps, const Scalar& u) {
        Scalar v = eps * d1, xi = Scalar(-2) * eps, w = half * (eps * d1 * u - d3);
        if (!opt.printed_arguments) {
            v = -v;
            xi = -xi;
            w = -half * (eps * d1 * u + d3);
        }
        return pi_determinant(size - 1, Scalar(0), Scalar(1), u, v, xi, w, opt.reading);
    };
    bool unit = d0 * d0 == Scalar(1);
    if (unit && p.delta3.is_zero() && is_odd_integer(d2)) {
        out.verdict = Verdict::Integrable;
        out.condition = "clause (1)";
        out.detail = "delta0^2 = 1, delta3 = 0, delta2 = " + d2.str() + " odd";
        return out;
    }
    if (unit && !p.delta3.is_zero() && is_odd_integer(d2)) {
        long D = to_long(d2);
        if (std::abs(D) >= 3) {
            Scalar eps(D > 0 ? 1 : -1);
            int size = static_cast<int>((std::abs(D) - 1) / 2);
            if (pi(size, eps, Scalar(2)).is_zero()) {
                out.verdict = Verdict::Integrable;
                out.condition = "clause (2)";
                out.detail = "eps = " + eps.str() + ", Pi_" + std::to_string(size) + " = 0";
                return out;
            }
        }
    }
    if (!unit) {
        for (int e0 : {1, -1})
            for (int ei : {1, -1}) {
                Scalar E0(e0), Ei(ei);
                Scalar twod = Ei * d2 - E0 * d0;
                if (!is_even_integer(twod)) continue;
                long ds = to_long(twod) / 2;
                if (ds < 1) continue;
                if (pi(static_cast<int>(ds), Ei, Scalar(1) + E0 * d0).is_zero()) {
                    out.verdict = Verdict::Integrable;
                    out.condition = "clause (3)";
                    out.detail = "eps0 = " + E0.str() + ", eps_inf = " + Ei.str() + ", d* = " + std::to_string(ds);
                    return out;
                }
            }
    }
    out.verdict = Verdict::NotIntegrable;
    out.detail = "no clause holds";
    return out;
}

LameClassification lame_classify(const LameParams& p) {
    if ((Scalar(27) * p.g3 * p.g3 - p.g2 * p.g2 * p.g2).is_zero())
        throw InvalidArgument("27 g3^2 - g2^3 vanishes: f has a repeated root");
    LameClassification out;
    Scalar half = Scalar::frac(1, 2);
    Scalar t = p.n + half;
    if (p.n.is_integer() && p.n.to_rational() >= 0) {
        out.kase = LameCase::LameHermite;
        out.label = "(i) Lame-Hermite";
        auto red = transform_S(p.ode()).first;
        KovacicResult res = solve_rlde(red);
        out.kovacic_case = res.kase;
        if (res.kase == 1) {
            out.subcase = 1;
            out.detail = "(i.1) Lame function: Kovacic case 1 gives a rational Riccati solution";
        } else {
            out.subcase = 2;
            out.detail = "(i.2) Hermite: no rational Riccati solution, Kovacic case " + std::to_string(res.kase);
        }
        return out;
    }
    if (t.is_integer() && t.to_rational() >= 0) {
        out.kase = LameCase::BrioschiHalphenCrawford;
        out.label = "(ii) Brioschi-Halphen-Crawford";
        out.detail = "undetermined: requires the Brioschi determinant Q_m with m = " + t.str();
        return out;
    }
    if (!t.is_integer() && ((Scalar(3) * t).is_integer() || (Scalar(4) * t).is_integer() || (Scalar(5) * t).is_integer())) {
        out.kase = LameCase::Baldassarri;
        out.label = "(iii) Baldassarri";
        out.detail = "undetermined: n + 1/2 = " + t.str() + " lies in (Z/3 u Z/4 u Z/5) - Z; further algebraic conditions apply";
        return out;
    }
    out.kase = LameCase::Generic;
    out.label = "generic";
    out.detail = "not integrable: n outside the integrable families";
    return out;
}

Scalar OrthFamilyRow::lambda(int n) const {
    Scalar N(n);
    switch (family) {
        case OrthFamily::Hermite:
            return Scalar(2) * N;
        case OrthFamily::ChebyshevT:
            return N * N;
        case OrthFamily::ChebyshevU:
            return N * (N + Scalar(2));
        case OrthFamily::Legendre:
            return N * (N + Scalar(1));
        case OrthFamily::Laguerre:
        case OrthFamily::AssocLaguerre:
            return N;
        case OrthFamily::Gegenbauer:
            return N * (N + Scalar(2) * m);
        case OrthFamily::Jacobi:
            return N * (N + Scalar(1) + m + nu);
        case OrthFamily::Bessel:
            return -N * (N + Scalar(1));
    }
    return Scalar();
}

OrthFamilyRow orth_row(OrthFamily family, const Scalar& m, const Scalar& nu) {
    auto P = [](std::vector<Scalar> c) { return Poly(std::move(c)); };
    Poly one_minus_x2 = P({Scalar(1), Scalar(0), Scalar(-1)});
    OrthFamilyRow r;
    r.family = family;
    r.m = m;
    r.nu = nu;
    switch (family) {
        case OrthFamily::Hermite:
            r.tag = "H";
            r.Q = Poly(1);
            r.L = P({Scalar(0), Scalar(-2)});
            break;
        case OrthFamily::ChebyshevT:
            r.tag = "T";
            r.Q = one_minus_x2;
            r.L = P({Scalar(0), Scalar(-1)});
            break;
        case OrthFamily::ChebyshevU:
            r.tag = "U";
            r.Q = one_minus_x2;
            r.L = P({Scalar(0), Scalar(-3)});
            break;
        case OrthFamily::Legendre:
            r.tag = "P";
            r.Q = one_minus_x2;
            r.L = P({Scalar(0), Scalar(-2)});
            break;
        case OrthFamily::Laguerre:
            r.tag = "L";
            r.Q = Poly::x();
            r.L = P({Scalar(1), Scalar(-1)});
            break;
        case OrthFamily::AssocLaguerre:
            r.tag = "L^(m)";
            r.Q = Poly::x();
            r.L = P({m + Scalar(1), Scalar(-1)});
            break;
        case OrthFamily::Gegenbauer:
            r.tag = "C^(m)";
            r.Q = one_minus_x2;
            r.L = P({Scalar(0), -(Scalar(2) * m + Scalar(1))});
            break;
        case OrthFamily::Jacobi:
            r.tag = "P^(m,nu)";
            r.Q = one_minus_x2;
            r.L = P({nu - m, -(m + nu + Scalar(2))});
            break;
        case OrthFamily::Bessel:
            r.tag = "B";
            r.Q = P({Scalar(0), Scalar(0), Scalar(1)});
            r.L = P({Scalar(2), Scalar(2)});
            break;
    }
    return r;
}

std::vector<OrthFamilyRow> orth_table(const Scalar& m, const Scalar& nu) {
    std::vector<OrthFamilyRow> out;
    for (OrthFamily f : {OrthFamily::Hermite, OrthFamily::ChebyshevT, OrthFamily::ChebyshevU, OrthFamily::Legendre,
                         OrthFamily::Laguerre, OrthFamily::AssocLaguerre, OrthFamily::Gegenbauer, OrthFamily::Jacobi,
                         OrthFamily::Bessel})
        out.push_back(orth_row(f, m, nu));
    return out;
}

Poly orth_polynomial(const OrthFamilyRow& row, int n) {
    if (n < 0) throw InvalidArgument("degree must be non-negative");
    Scalar lam = row.lambda(n);
    auto image = [&](int j) {
        Poly xj = Poly::monomial(Scalar(1), j);
        return row.Q * xj.derivative().derivative() + row.L * xj.derivative() + lam * xj;
    };
    std::vector<Poly> cols;
    for (int j = 0; j < n; ++j) cols.push_back(image(j));
    Poly top = image(n);
    int rows = std::max(top.degree(), 0) + 1;
    for (auto& c : cols) rows = std::max(rows, c.degree() + 1);
    Matrix A(rows, std::vector<Scalar>(n));
    std::vector<Scalar> rhs(rows);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < n; ++j) A[i][j] = cols[j].coeff(i);
        rhs[i] = -top.coeff(i);
    }
    std::vector<Scalar> c;
    if (n > 0) {
        auto sol = linear_solve(A, rhs);
        if (!sol) throw GenerationFailed("no monic degree-" + std::to_string(n) + " solution for family " + row.tag);
        c = sol->x;
    } else if (!top.is_zero()) {
        throw GenerationFailed("constant is not a solution for family " + row.tag);
    }
    c.push_back(Scalar(1));
    return Poly(c);
}

bool OrthReduced::verify() const {
    RatFunc p(pn), h = half_b1;
    RatFunc lhs = p.derivative().derivative() + RatFunc(2) * h * p.derivative() + (h.derivative() + h * h) * p;
    return lhs == eq.rho * p;
}

OrthReduced orth_reduced_rho(const OrthFamilyRow& row, int n) {
    RatFunc Q(row.Q), L(row.L);
    auto red = transform_S(SecondOrderODE{L / Q, RatFunc(row.lambda(n)) / Q}).first;
    OrthReduced out{red, orth_polynomial(row, n), L / (RatFunc(2) * Q)};
    if (!out.verify()) throw VerificationFailure("reduced solution check failed for family " + row.tag);
    return out;
}

}  // namespace rg
