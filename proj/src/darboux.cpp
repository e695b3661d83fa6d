#include "rg/darboux.hpp"

#include "rg/errors.hpp"
#include "rg/exactalg.hpp"
#include "rg/odeforms.hpp"

namespace rg {

namespace {

Poly lcm(const Poly& a, const Poly& b) { return (a * b).divmod(poly_gcd(a, b)).first.monic(); }

bool all_polynomial(const PlanarVectorField& X) { return X.P.is_polynomial() && X.Q.is_polynomial(); }

/// Reads r from a field whose foliation is w' = r - w^2.
RatFunc reduced_r(const PlanarVectorField& vf) {
    Foliation f = foliation_of(vf);
    if (!f.reduced) throw InvalidArgument("field is not of the form q d/dx + (p - q w^2) d/dw");
    return f.eq.a0;
}

BiPoly sum_of(const DarbouxObject& o) {
    BiPoly s;
    for (std::size_t i = 0; i < o.curves.size(); ++i) s += BiPoly(o.lambda[i]) * o.curves[i].K;
    for (std::size_t j = 0; j < o.expfactors.size(); ++j) s += BiPoly(o.lambda_exp[j]) * o.expfactors[j].Ktilde;
    return s;
}

}  // namespace

bool DarbouxObject::verify(const PlanarVectorField& X) const {
    BiPoly s = sum_of(*this);
    if (kind == DarbouxTarget::IntegratingFactor) s += X.divergence();
    return s.is_zero();
}

Formal DarbouxObject::expression() const {
    std::vector<Formal> f;
    for (std::size_t i = 0; i < curves.size(); ++i)
        if (!lambda[i].is_zero()) f.push_back(Formal::pow(Formal::bi(curves[i].f), lambda[i]));
    for (std::size_t j = 0; j < expfactors.size(); ++j)
        if (!lambda_exp[j].is_zero())
            f.push_back(Formal::exp(lambda_exp[j].is_one()
                                        ? expfactors[j].exponent
                                        : Formal::mul({Formal::rat(RatFunc(lambda_exp[j])), expfactors[j].exponent})));
    if (f.empty()) return Formal::rat(RatFunc(1));
    return Formal::mul(f);
}

std::optional<BiPoly> cofactor_of(const PlanarVectorField& X, const BiPoly& f) {
    if (f.is_zero()) throw InvalidArgument("the zero polynomial defines no curve");
    return X.apply(f).divide_exact(f);
}

std::optional<AlgebraicCurve> invariant_curve(const PlanarVectorField& X, const BiPoly& f) {
    auto K = cofactor_of(X, f);
    if (!K) return std::nullopt;
    if (all_polynomial(X) && f.is_polynomial()) {
        if (!K->is_polynomial()) return std::nullopt;
        if (!K->is_zero() && K->total_degree() > X.degree() - 1)
            throw VerificationFailure("cofactor degree exceeds d - 1");
    }
    return AlgebraicCurve{f, *K};
}

std::optional<ExponentialFactor> exponential_factor(const PlanarVectorField& X, const BiPoly& g, const BiPoly& h) {
    if (h.is_zero()) throw InvalidArgument("exponential factor with zero denominator");
    BiPoly num = h * X.apply(g) - g * X.apply(h);
    auto K = num.divide_exact(h * h);
    if (!K) return std::nullopt;
    if (all_polynomial(X) && g.is_polynomial() && h.is_polynomial() && !K->is_polynomial()) return std::nullopt;
    Formal e = h == BiPoly(1) ? Formal::bi(g) : Formal::mul({Formal::bi(g), Formal::pow(Formal::bi(h), Scalar(-1))});
    return ExponentialFactor{e, *K};
}

ExponentialFactor exponential_integral_factor(const PlanarVectorField& X, const RatFunc& g) {
    if (!X.P.is_x_only()) throw InvalidArgument("exponential of an x-integral needs an x-component free of w");
    return ExponentialFactor{Formal::integral(Formal::rat(g)), X.P * BiPoly(g)};
}

std::optional<DarbouxObject> darboux_combination(const std::vector<AlgebraicCurve>& curves,
                                                 const std::vector<ExponentialFactor>& expfactors,
                                                 const PlanarVectorField& X, DarbouxTarget target) {
    std::vector<BiPoly> items;
    for (auto& c : curves) items.push_back(c.K);
    for (auto& e : expfactors) items.push_back(e.Ktilde);
    std::size_t nu = items.size();
    if (nu == 0) return std::nullopt;
    BiPoly t = target == DarbouxTarget::IntegratingFactor ? X.divergence() : BiPoly();
    int maxdeg = t.degree_y();
    for (auto& it : items) maxdeg = std::max(maxdeg, it.degree_y());
    Matrix A;
    std::vector<Scalar> rhs;
    for (int j = 0; j <= maxdeg; ++j) {
        Poly D = t.coeff(j).den();
        for (auto& it : items) D = lcm(D, it.coeff(j).den());
        std::vector<Poly> cols;
        int rows = 0;
        for (auto& it : items) {
            cols.push_back((it.coeff(j) * RatFunc(D)).num());
            rows = std::max(rows, cols.back().degree() + 1);
        }
        Poly tp = (t.coeff(j) * RatFunc(D)).num();
        rows = std::max(rows, tp.degree() + 1);
        for (int i = 0; i < rows; ++i) {
            std::vector<Scalar> row;
            for (auto& c : cols) row.push_back(c.coeff(i));
            A.push_back(row);
            rhs.push_back(-tp.coeff(i));
        }
    }
    std::vector<Scalar> lam(nu);
    if (!A.empty()) {
        auto sol = linear_solve(A, rhs);
        if (!sol) return std::nullopt;
        if (target == DarbouxTarget::FirstIntegral) {
            if (sol->nullspace.empty()) return std::nullopt;
            lam = sol->nullspace.front();
        } else {
            lam = sol->x;
        }
    } else if (target == DarbouxTarget::FirstIntegral) {
        lam[0] = Scalar(1);
    }
    DarbouxObject o;
    o.curves = curves;
    o.expfactors = expfactors;
    o.kind = target;
    o.lambda.assign(lam.begin(), lam.begin() + curves.size());
    o.lambda_exp.assign(lam.begin() + curves.size(), lam.end());
    if (!o.verify(X)) throw VerificationFailure("Darboux combination does not re-verify");
    return o;
}

PlanarVectorField riccati_field(const RatFunc& r) {
    BiPoly w = BiPoly::y();
    BiPoly q(RatFunc(r.den())), p(RatFunc(r.num()));
    return PlanarVectorField{q, p - q * w * w};
}

PlanarVectorField normalized_riccati_field(const RatFunc& r) {
    BiPoly w = BiPoly::y();
    return PlanarVectorField{BiPoly(1), BiPoly(r) - w * w};
}

DarbouxFunction lemma_integrating_factor(const RatFunc& w1) {
    DarbouxFunction mu;
    mu.factors.emplace_back(-BiPoly::y() + BiPoly(w1), Scalar(-2));
    mu.exp_integral = RatFunc(-2) * w1;
    return mu;
}

DarbouxFunction integrating_factor_from_solution(const RatFunc& w1, const PlanarVectorField& vf) {
    RatFunc r = reduced_r(vf);
    if (w1.derivative() + w1 * w1 != r) throw NotASolution("w1' + w1^2 differs from r = " + r.str());
    DarbouxFunction mu = lemma_integrating_factor(w1);
    RatFunc q = vf.P.coeff(0);
    if (!q.is_constant()) mu.factors.emplace_back(BiPoly(q), Scalar(-1));
    return mu;
}

bool is_integrating_factor(const PlanarVectorField& X, const DarbouxFunction& mu) {
    auto [num, den] = log_derivative_along(X, mu);
    return (num + X.divergence() * den).is_zero();
}

DarbouxFunction first_integral_two_solutions(const RatFunc& w1, const RatFunc& w2) {
    if (w1 == w2) throw Degenerate("the two Riccati solutions coincide");
    if (w1.derivative() + w1 * w1 != w2.derivative() + w2 * w2)
        throw NotASolution("w1 and w2 solve different reduced Riccati equations");
    BiPoly w = BiPoly::y();
    DarbouxFunction H;
    H.factors.emplace_back(-w + BiPoly(w2), Scalar(1));
    H.factors.emplace_back(-w + BiPoly(w1), Scalar(-1));
    H.exp_integral = w2 - w1;
    return H;
}

bool is_first_integral(const PlanarVectorField& X, const DarbouxFunction& H) {
    return log_derivative_along(X, H).first.is_zero();
}

std::string BiRational::str(const std::string& xv, const std::string& wv) const {
    return "(" + num.str(xv, wv) + ")/(" + den.str(xv, wv) + ")";
}

BiRational rational_first_integral_cyclic(const RatFunc& g, int n) {
    if (g.is_zero()) throw InvalidArgument("g must be nonzero");
    if (n < 1) throw InvalidArgument("n must be positive");
    BiPoly w = BiPoly::y();
    BiPoly ng(RatFunc(n) * g), gp(g.derivative());
    BiPoly A = -ng * w - gp, B = -ng * w + gp;
    BiPoly num = A.pow(n), den = BiPoly(g * g) * B.pow(n);
    Poly a = num.common_denominator(), b = den.common_denominator();
    BiPoly s(RatFunc(a * b));
    num = num * s;
    den = den * s;
    Poly content;
    for (auto& c : num.coeffs()) content = poly_gcd(content, c.num());
    for (auto& c : den.coeffs()) content = poly_gcd(content, c.num());
    Scalar lc = den.coeffs().back().num().lc();
    RatFunc scale = RatFunc(Scalar(1)) / (RatFunc(content) * RatFunc(lc));
    return BiRational{num * BiPoly(scale), den * BiPoly(scale)};
}

bool is_first_integral(const PlanarVectorField& X, const BiRational& H) {
    return (H.den * X.apply(H.num) - H.num * X.apply(H.den)).is_zero();
}

std::string to_string(FirstIntegralType t) {
    switch (t) {
        case FirstIntegralType::DarbouxSchwarzChristoffel:
            return "Darboux-Schwarz-Christoffel";
        case FirstIntegralType::Darboux:
            return "Darboux";
        case FirstIntegralType::Hyperelliptic:
            return "hyperelliptic";
        case FirstIntegralType::Rational:
            return "rational";
        case FirstIntegralType::None:
            return "none";
    }
    return "none";
}

FirstIntegralClass classify_first_integral(const KovacicResult& res) {
    FirstIntegralClass out;
    switch (res.kase) {
        case 1: {
            auto all = case1_all(res.r);
            bool family = false;
            for (auto& c : all) {
                out.rational_solutions.push_back(c.riccati_solution());
                family = family || c.nullity > 0;
            }
            out.type = (all.size() >= 2 || family) ? FirstIntegralType::Darboux
                                                   : FirstIntegralType::DarbouxSchwarzChristoffel;
            if (!out.rational_solutions.empty())
                out.integrating_factor =
                    integrating_factor_from_solution(out.rational_solutions.front(), riccati_field(res.r));
            break;
        }
        case 2:
            out.type = FirstIntegralType::Hyperelliptic;
            break;
        case 3:
            out.type = FirstIntegralType::Rational;
            break;
        default:
            out.type = FirstIntegralType::None;
    }
    return out;
}

}  // namespace rg
