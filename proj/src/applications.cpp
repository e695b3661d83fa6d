#include "rg/applications.hpp"

#include <map>

#include "rg/errors.hpp"

namespace rg {

namespace {

const RatFunc& X() {
    static const RatFunc x = RatFunc::x();
    return x;
}

bool negative_rational(const Scalar& s) { return s.is_rational() && s.to_rational() < 0; }

void absorb_all(std::initializer_list<Scalar> values) {
    for (const Scalar& v : values) Tower::absorb(v);
}

CriterionVerdict from_kovacic(int kase, const std::string& why) {
    CriterionVerdict v;
    v.criterion = "kovacic";
    v.condition = "case " + std::to_string(kase);
    v.verdict = kase == 4 ? Verdict::NotIntegrable : Verdict::Integrable;
    v.detail = why;
    return v;
}

}  // namespace

S1Analysis s1_analyze(const S1Params& p) {
    TowerScope scope;
    absorb_all({p.eps, p.lambda, p.b20, p.b11, p.b02});
    Scalar disc = p.b11 * p.b11 - Scalar(4) * p.b20 * p.b02;
    if (disc.is_zero()) throw DegenerateDiscriminant("b11^2 - 4 b20 b02 = 0: the Whittaker reduction does not apply");
    S1Analysis out;
    Scalar half = Scalar::frac(1, 2);
    Scalar num = p.eps * p.b02 + half * p.b11 * (Scalar(1) - p.lambda);
    out.sqrt_disc = disc.sqrt();
    out.kappa = num / out.sqrt_disc;
    out.mu = half * p.lambda;
    out.trace.push_back("s1: disc = " + disc.str() + ", sqrt = " + out.sqrt_disc.str());
    out.trace.push_back("s1: kappa = " + out.kappa.str() + ", mu = " + out.mu.str());

    out.rho = RatFunc((p.lambda * p.lambda - Scalar(1)) / Scalar(4)) / (X() * X()) -
              RatFunc(num) / X() + RatFunc(disc / Scalar(4));
    if (!p.b02.is_zero()) {
        RiccatiGeneral e{RatFunc(p.eps) + RatFunc(p.b20) * X(), (RatFunc(p.lambda) + RatFunc(p.b11) * X()) / X(),
                         RatFunc(p.b02) / X()};
        if (transform_S(transform_B(e)).first.rho != out.rho)
            throw VerificationFailure("reduced potential differs from the B/S pipeline");
        out.trace.push_back("s1: transform_B then transform_S reproduces rho = " + out.rho.str());
    } else {
        out.trace.push_back("s1: b02 = 0, the foliation is linear; rho = " + out.rho.str());
    }

    out.martinet_ramis = martinet_ramis_test({out.kappa, out.mu});
    auto other = martinet_ramis_test({-out.kappa, out.mu});
    if (other.verdict != out.martinet_ramis.verdict)
        throw VerificationFailure("Martinet-Ramis verdict depends on the square root sign");
    out.trace.push_back("s1: martinet-ramis " + to_string(out.martinet_ramis.verdict) +
                        (out.martinet_ramis.condition.empty() ? "" : " by " + out.martinet_ramis.condition) +
                        " (both square roots)");
    out.a1 = p.b02.is_zero() && p.lambda.is_zero();
    out.b1 = p.b02.is_zero() && negative_rational(p.lambda);
    out.trace.push_back(std::string("s1: (a1) ") + (out.a1 ? "holds" : "fails") + ", (b1) " +
                        (out.b1 ? "holds" : "fails"));
    out.kovacic_case = solve_rlde(ReducedODE{out.rho}).kase;
    out.trace.push_back("s1: kovacic case " + std::to_string(out.kovacic_case));
    return out;
}

std::string to_string(S2Class c) {
    switch (c) {
        case S2Class::Bernoulli:
            return "Bernoulli";
        case S2Class::Linear:
            return "Linear";
        case S2Class::Separable:
            return "Separable";
        case S2Class::Lienard:
            return "Lienard";
        case S2Class::Unclassified:
            return "Unclassified";
    }
    return "Unclassified";
}

S2Class s2_classify(const S2Params& p) {
    if (p.lambda.is_zero() && p.b11.is_zero()) return S2Class::Bernoulli;
    if (p.eps.is_zero() && p.b20.is_zero()) return S2Class::Linear;
    if (p.b20.is_zero() && p.b02.is_zero() && p.lambda.is_zero() && !(p.eps * p.b11).is_zero())
        return S2Class::Separable;
    if (p.b02.is_zero()) return S2Class::Lienard;
    return S2Class::Unclassified;
}

PlanarVectorField orth_lienard_field(const OrthFamilyRow& row, int n, const Scalar& mu) {
    if (mu.is_zero()) throw InvalidArgument("mu must be nonzero");
    BiPoly v = BiPoly::y();
    RatFunc Q(row.Q);
    BiPoly vdot = BiPoly(RatFunc(row.lambda(n) / mu) * Q) + BiPoly(RatFunc(row.Q.derivative() - row.L)) * v +
                  BiPoly(mu) * v * v;
    return PlanarVectorField{BiPoly(Q), vdot};
}

AlgebraicCurve orth_invariant_curve(const OrthFamilyRow& row, int n, const Scalar& mu) {
    PlanarVectorField F = orth_lienard_field(row, n, mu);
    Poly pn = orth_polynomial(row, n);
    BiPoly f = BiPoly(mu) * BiPoly::y() * BiPoly(RatFunc(pn)) + BiPoly(RatFunc(row.Q * pn.derivative()));
    auto c = invariant_curve(F, f);
    if (!c) throw VerificationFailure("curve for family " + row.tag + " is not invariant");
    return *c;
}

SecondOrderODE legendre_equation(const Scalar& mu, const Scalar& nu_const) {
    RatFunc one_minus = RatFunc(1) - X() * X();
    return SecondOrderODE{RatFunc(-2) * X() / one_minus,
                          (RatFunc(-nu_const) - RatFunc(mu * mu) / one_minus) / one_minus};
}

Lienard1Result lienard1_reduce(const Lienard1Params& p) {
    if (p.m.is_zero()) throw SingularParameterCombination("m = 0");
    Scalar D = p.m * p.c - Scalar(2) * p.a * p.b * p.m * p.m;
    if (D.is_zero()) throw SingularParameterCombination("m c - 2 a b m^2 = 0");
    TowerScope scope;
    absorb_all({p.a, p.b, p.c, p.m, p.k});
    Lienard1Result out;
    out.mu = -(p.m + p.k) / (Scalar(2) * p.m);
    out.nu_const = (p.m * p.m - p.k * p.k) / (Scalar(4) * p.m * p.m) - p.a * p.b * p.k * p.k / D;
    Scalar s = (Scalar(1) - Scalar(4) * out.nu_const).sqrt();
    Scalar half = Scalar::frac(1, 2);
    out.nu_roots.push_back(half * (Scalar(-1) + s));
    if (!s.is_zero()) out.nu_roots.push_back(half * (Scalar(-1) - s));
    const Scalar& mu = out.mu;
    const Scalar& nu = out.nu_roots.front();
    out.trace.push_back("lienard1: mu = " + mu.str() + ", nu^2 + nu + " + out.nu_const.str() + " = 0");
    out.trace.push_back("lienard1: nu = " + nu.str());

    ExponentDiffs diffs{mu, mu, Scalar(2) * nu + Scalar(1)};
    out.kimura = kimura_test(diffs);
    out.trace.push_back("lienard1: exponent differences (" + mu.str() + ", " + mu.str() + ", " + diffs.nu.str() +
                        "), kimura " + to_string(out.kimura.verdict));

    CriterionVerdict& v = out.verdict;
    v.criterion = "legendre-proposition";
    if ((mu + nu).is_integer() || (mu - nu).is_integer() || nu.is_integer()) {
        v.verdict = Verdict::Integrable;
        v.condition = "clause (1)";
        v.detail = "mu +- nu or nu is an integer";
    } else if (auto m = kimura_table_match(diffs, {1, 3, 11, 12, 13, 15})) {
        static const std::map<int, std::string> letter = {{1, "a"},  {3, "b"},  {11, "c"},
                                                          {12, "d"}, {13, "e"}, {15, "f"}};
        v.verdict = Verdict::Integrable;
        v.condition = "clause (2)(" + letter.at(m->row) + ")";
        v.detail = "table row " + std::to_string(m->row);
    } else if (out.kimura.integrable()) {
        v.verdict = Verdict::Integrable;
        v.condition = "kimura " + out.kimura.condition;
        v.detail = "integrable by a table row the proposition does not list";
    } else {
        v.verdict = Verdict::NotIntegrable;
        v.detail = "no clause holds";
    }
    out.trace.push_back("lienard1: " + to_string(v.verdict) + (v.condition.empty() ? "" : " by " + v.condition));
    return out;
}

RatFunc affine_substitute(const RatFunc& r, const Scalar& s, const Scalar& t0) {
    Poly lin(std::vector<Scalar>{t0, s});
    auto sub = [&](const Poly& p) {
        Poly acc;
        for (int i = p.degree(); i >= 0; --i) acc = acc * lin + Poly(p.coeff(i));
        return acc;
    };
    return RatFunc(sub(r.num())) / RatFunc(sub(r.den()));
}

RatFunc abel_lienard_rho(const AbelLienardParams& p) {
    const Scalar &a = p.a, &b = p.b, &c = p.c, &al = p.alpha, &be = p.beta, &ga = p.gamma;
    RatFunc L = RatFunc(ga) * X() + RatFunc(c);
    if (L.is_zero()) throw InvalidArgument("c and gamma both vanish: the equation is linear in x");
    Scalar two(2), four(4);
    return RatFunc((be * be - four * al * ga) / four) * X() * X() -
           RatFunc((two * a * ga + two * al * c - b * be) / two) * X() - RatFunc((four * a * c - b * b) / four) +
           RatFunc(b * ga - be * c) / (RatFunc(2) * L) + RatFunc(Scalar(3) * ga * ga) / (RatFunc(4) * L * L);
}

RatFunc abel_lienard_rho_pipeline(const AbelLienardParams& p) {
    if (p.c.is_zero() && p.gamma.is_zero()) throw InvalidArgument("c and gamma both vanish: the equation is linear in x");
    RiccatiGeneral e{RatFunc(p.a) + RatFunc(p.alpha) * X(), RatFunc(p.b) + RatFunc(p.beta) * X(),
                     RatFunc(p.c) + RatFunc(p.gamma) * X()};
    return transform_S(transform_B(e)).first.rho;
}

AbelLienardResult abel_lienard_reduce(const AbelLienardParams& p) {
    TowerScope scope;
    absorb_all({p.a, p.b, p.c, p.alpha, p.beta, p.gamma});
    AbelLienardResult out;
    out.rho = abel_lienard_rho_pipeline(p);
    if (out.rho != abel_lienard_rho(p)) throw VerificationFailure("closed-form potential differs from the pipeline");
    out.trace.push_back("abel: rho = " + out.rho.str());
    out.kovacic_case = solve_rlde(ReducedODE{out.rho}).kase;
    out.trace.push_back("abel: kovacic case " + std::to_string(out.kovacic_case));

    Scalar A = p.beta * p.beta - Scalar(4) * p.alpha * p.gamma;
    if (p.gamma.is_zero()) {
        bool linear_poly = p.beta.is_zero() && out.rho.is_poly() && out.rho.num().degree() == 1;
        out.verdict = from_kovacic(out.kovacic_case, linear_poly ? "polynomial potential of degree 1"
                                                                 : "gamma = 0: no biconfluent normal form");
        out.trace.push_back("abel: gamma = 0, verdict from Kovacic");
        return out;
    }
    if (A.is_zero()) {
        out.verdict = from_kovacic(out.kovacic_case, "beta^2 - 4 alpha gamma = 0: no biconfluent normal form");
        out.trace.push_back("abel: beta^2 - 4 alpha gamma = 0, verdict from Kovacic");
        return out;
    }
    Scalar g2 = p.gamma * p.gamma;
    out.rho_tau = affine_substitute(out.rho, Scalar(1) / p.gamma, -p.c / p.gamma) / RatFunc(g2);
    out.trace.push_back("abel: tau = gamma x + c, rho(tau) = " + out.rho_tau->str());

    RatFunc tau2 = *out.rho_tau * X() * X();
    Scalar lead = tau2.num().lc() / tau2.den().lc();
    Scalar root = lead.sqrt();
    std::optional<Scalar> scale;
    for (const Scalar& s : {root, -root}) {
        try {
            scale = s.sqrt();
            break;
        } catch (const Unsupported&) {
        }
    }
    if (!scale) throw Unsupported("fourth root of " + lead.str() + " lies outside the tower");
    out.scale = scale;
    RatFunc phi = affine_substitute(*out.rho_tau, Scalar(1) / *scale, Scalar(0)) / RatFunc(*scale * *scale);
    RatFunc poly = phi * X() * X();
    if (!poly.is_poly() || poly.num().degree() != 4 || !poly.num().lc().is_one())
        throw VerificationFailure("normalized potential is not of biconfluent shape");
    const Poly& c = poly.num();
    BiconfluentParams d;
    d.delta1 = c.coeff(3);
    d.delta2 = d.delta1 * d.delta1 / Scalar(4) - c.coeff(2);
    d.delta3 = Scalar(2) * c.coeff(1);
    d.delta0 = (Scalar(1) + Scalar(4) * c.coeff(0)).sqrt();
    if (d.rho() != phi) throw VerificationFailure("biconfluent parameters do not reproduce the potential");
    out.delta = d;
    out.trace.push_back("abel: z = " + scale->str() + " tau, delta = (" + d.delta0.str() + ", " + d.delta1.str() +
                        ", " + d.delta2.str() + ", " + d.delta3.str() + ")");
    out.verdict = biconfluent_heun_test(d);
    out.trace.push_back("abel: biconfluent " + to_string(out.verdict.verdict) +
                        (out.verdict.condition.empty() ? "" : " by " + out.verdict.condition));
    return out;
}

RatFunc weil_hypergeometric_rho(const Scalar& l, const Scalar& m, const Scalar& n) {
    RatFunc x1 = X() - RatFunc(1);
    RatFunc a = RatFunc(Scalar(1) - l * l) / (RatFunc(4) * X() * X());
    RatFunc b = RatFunc(Scalar(1) - m * m) / (RatFunc(4) * x1 * x1);
    RatFunc c = RatFunc(Scalar(1) - n * n + l * l + m * m) / (RatFunc(4) * X() * x1);
    return -(a + b + c);
}

RatFunc hypergeometric_rho(const Scalar& l, const Scalar& m, const Scalar& n) {
    RatFunc x1 = X() - RatFunc(1);
    Scalar A = (l * l - Scalar(1)) / Scalar(4), B = (m * m - Scalar(1)) / Scalar(4);
    Scalar C = (n * n - Scalar(1)) / Scalar(4) - A - B;
    return RatFunc(A) / (X() * X()) + RatFunc(B) / (x1 * x1) + RatFunc(C) / (X() * x1);
}

RatFunc weil_second_rho(const Scalar& nu) {
    RatFunc x1 = X() - RatFunc(1);
    SecondOrderODE e{(RatFunc(7) * X() - RatFunc(4)) / (RatFunc(6) * X() * x1),
                     -RatFunc(Scalar(36) * nu * nu - Scalar(1)) / (RatFunc(144) * X() * x1)};
    return transform_S(e).first.rho;
}

RatFunc triconfluent_rho(const Scalar& d0, const Scalar& d1, const Scalar& d2) {
    RatFunc x2 = X() * X();
    return RatFunc(Scalar::frac(9, 4)) * x2 * x2 + RatFunc(Scalar::frac(3, 2) * d2) * x2 - RatFunc(d1) * X() +
           RatFunc(d2 * d2 / Scalar(4) - d0);
}

std::vector<WorkedExample> worked_examples() {
    auto Q = [](long n, long d = 1) { return Scalar::frac(n, d); };
    struct Item {
        std::string name, params;
        RatFunc rho;
    };
    std::vector<Item> items = {
        {"weil-hypergeometric", "lambda=1/2 mu=1/2 nu=1/2", weil_hypergeometric_rho(Q(1, 2), Q(1, 2), Q(1, 2))},
        {"weil-hypergeometric", "lambda=1/2 mu=1/2 nu=1/3", weil_hypergeometric_rho(Q(1, 2), Q(1, 2), Q(1, 3))},
        {"hypergeometric", "lambda=1/3 mu=1/2 nu=1/3", hypergeometric_rho(Q(1, 3), Q(1, 2), Q(1, 3))},
        {"hypergeometric", "lambda=1/3 mu=1/2 nu=1/4", hypergeometric_rho(Q(1, 3), Q(1, 2), Q(1, 4))},
        {"weil-second", "nu=1/3", weil_second_rho(Q(1, 3))},
        {"weil-second", "nu=1/4", weil_second_rho(Q(1, 4))},
        {"triconfluent", "delta0=0 delta1=0 delta2=0", triconfluent_rho(Q(0), Q(0), Q(0))},
        {"triconfluent", "delta0=1 delta1=1 delta2=0", triconfluent_rho(Q(1), Q(1), Q(0))},
    };
    std::vector<WorkedExample> out;
    for (auto& it : items) {
        WorkedExample w;
        w.name = it.name;
        w.params = it.params;
        w.result = solve_rlde(ReducedODE{it.rho});
        w.verified = verify(w.result);
        w.first_integral = classify_first_integral(w.result).type;
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace rg
