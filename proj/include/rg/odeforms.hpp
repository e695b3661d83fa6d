#pragma once

#include <string>
#include <utility>

#include "rg/bipoly.hpp"
#include "rg/ratfunc.hpp"

namespace rg {

/// y'' + b1 y' + b0 y = 0.
struct SecondOrderODE {
    RatFunc b1, b0;
};

/// xi'' = rho xi.
struct ReducedODE {
    RatFunc rho;
};

/// v' = a0 + a1 v + a2 v^2.
struct RiccatiGeneral {
    RatFunc a0, a1, a2;
    friend bool operator==(const RiccatiGeneral& a, const RiccatiGeneral& b) {
        return a.a0 == b.a0 && a.a1 == b.a1 && a.a2 == b.a2;
    }
};

/// w' = r - w^2.
struct RiccatiReduced {
    RatFunc r;
};

/// Affine change v = alpha + beta w.
struct Substitution {
    RatFunc alpha, beta;
};

/// y = xi * exp(integral of integrand).
struct GaugeMultiplier {
    RatFunc integrand;
};

std::pair<RiccatiReduced, Substitution> transform_T(const RiccatiGeneral& e);
SecondOrderODE transform_B(const RiccatiGeneral& e);
std::pair<ReducedODE, GaugeMultiplier> transform_S(const SecondOrderODE& e);
RiccatiReduced transform_R(const ReducedODE& e);

/// Riccati equation in v obtained from w' = r - w^2 through v = alpha + beta w.
RiccatiGeneral apply_substitution(const RiccatiReduced& e, const Substitution& s);

/// Riccati equation dy/dx = Q/P read off a planar field whose x-component depends on x only.
struct Foliation {
    RiccatiGeneral eq;
    /// a1 = 0 and a2 = -1: the equation is w' = a0 - w^2.
    bool reduced = false;
    /// a2 = 0: the foliation is linear rather than genuinely quadratic.
    bool linear = false;
    std::string orientation = "base x, fiber y";
};

/// Throws NotRiccati if the x-component depends on y or the fiber degree exceeds two.
Foliation foliation_of(const PlanarVectorField& v);

}  // namespace rg
