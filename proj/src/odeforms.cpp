#include "rg/odeforms.hpp"

#include "rg/errors.hpp"

namespace rg {

namespace {

void require_quadratic(const RiccatiGeneral& e) {
    if (e.a2.is_zero()) throw InvalidArgument("Riccati equation needs a2 != 0");
}

const RatFunc kHalf = RatFunc(Scalar::frac(1, 2));

}  // namespace

std::pair<RiccatiReduced, Substitution> transform_T(const RiccatiGeneral& e) {
    require_quadratic(e);
    const RatFunc& a0 = e.a0;
    const RatFunc& a1 = e.a1;
    const RatFunc& a2 = e.a2;
    RatFunc alpha = -(a2.derivative() / (RatFunc(2) * a2 * a2) + a1 / (RatFunc(2) * a2));
    RatFunc beta = RatFunc(-1) / a2;
    RatFunc r = (a0 + a1 * alpha + a2 * alpha * alpha - alpha.derivative()) / beta;
    return {RiccatiReduced{r}, Substitution{alpha, beta}};
}

SecondOrderODE transform_B(const RiccatiGeneral& e) {
    require_quadratic(e);
    return SecondOrderODE{-(e.a1 + e.a2.derivative() / e.a2), e.a0 * e.a2};
}

std::pair<ReducedODE, GaugeMultiplier> transform_S(const SecondOrderODE& e) {
    RatFunc rho = e.b1 * e.b1 * RatFunc(Scalar::frac(1, 4)) + kHalf * e.b1.derivative() - e.b0;
    return {ReducedODE{rho}, GaugeMultiplier{-kHalf * e.b1}};
}

RiccatiReduced transform_R(const ReducedODE& e) { return RiccatiReduced{e.rho}; }

RiccatiGeneral apply_substitution(const RiccatiReduced& e, const Substitution& s) {
    const RatFunc& al = s.alpha;
    const RatFunc& be = s.beta;
    RatFunc bp = be.derivative() / be;
    RiccatiGeneral g;
    g.a2 = RatFunc(-1) / be;
    g.a1 = bp + RatFunc(2) * al / be;
    g.a0 = al.derivative() - al * bp + be * e.r - al * al / be;
    return g;
}

Foliation foliation_of(const PlanarVectorField& v) {
    if (v.P.is_zero()) throw NotRiccati("x-component vanishes identically");
    if (!v.P.is_x_only()) throw NotRiccati("x-component depends on the fiber variable");
    if (v.Q.degree_y() > 2) throw NotRiccati("fiber degree " + std::to_string(v.Q.degree_y()) + " exceeds two");
    RatFunc p = v.P.coeff(0);
    Foliation f;
    f.eq.a0 = v.Q.coeff(0) / p;
    f.eq.a1 = v.Q.coeff(1) / p;
    f.eq.a2 = v.Q.coeff(2) / p;
    f.linear = f.eq.a2.is_zero();
    f.reduced = f.eq.a1.is_zero() && f.eq.a2 == RatFunc(-1);
    return f;
}

}  // namespace rg
