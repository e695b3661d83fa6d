#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rg/bipoly.hpp"
#include "rg/formal.hpp"
#include "rg/kovacic.hpp"

namespace rg {

/// Invariant curve f = 0 with X(f) = K f.
struct AlgebraicCurve {
    BiPoly f, K;
};

/// exp(exponent) with X(exponent) = Ktilde. For exponent g/h the pair is kept for printing.
struct ExponentialFactor {
    Formal exponent;
    BiPoly Ktilde;
};

enum class DarbouxTarget { FirstIntegral, IntegratingFactor };

struct DarbouxObject {
    std::vector<AlgebraicCurve> curves;
    std::vector<ExponentialFactor> expfactors;
    std::vector<Scalar> lambda, lambda_exp;
    DarbouxTarget kind = DarbouxTarget::FirstIntegral;

    /// sum lambda_i K_i + sum lambda~_j K~_j (+ div X) vanishes.
    bool verify(const PlanarVectorField& X) const;
    Formal expression() const;
};

/// Exact quotient X(f)/f in Q(x)[w], or nullopt if f is not invariant.
std::optional<BiPoly> cofactor_of(const PlanarVectorField& X, const BiPoly& f);
/// Invariant curve with its cofactor; for polynomial data the cofactor must be polynomial of degree <= d-1.
std::optional<AlgebraicCurve> invariant_curve(const PlanarVectorField& X, const BiPoly& f);
/// exp(g/h) with X(g/h) polynomial in w.
std::optional<ExponentialFactor> exponential_factor(const PlanarVectorField& X, const BiPoly& g, const BiPoly& h);
/// exp(int g dx) for g in Q(x); its cofactor is P g.
ExponentialFactor exponential_integral_factor(const PlanarVectorField& X, const RatFunc& g);

std::optional<DarbouxObject> darboux_combination(const std::vector<AlgebraicCurve>& curves,
                                                 const std::vector<ExponentialFactor>& expfactors,
                                                 const PlanarVectorField& X, DarbouxTarget target);

/// q d/dx + (p - q w^2) d/dw with r = p/q in lowest terms, q monic.
PlanarVectorField riccati_field(const RatFunc& r);
/// d/dx + (r - w^2) d/dw.
PlanarVectorField normalized_riccati_field(const RatFunc& r);

/// exp(-2 int w1) / (-w + w1)^2, divided by the x-component of vf when that is not constant.
/// Throws NotASolution unless w1' + w1^2 equals the r read off vf.
DarbouxFunction integrating_factor_from_solution(const RatFunc& w1, const PlanarVectorField& vf);
/// exp(-2 int w1) / (-w + w1)^2 without the x-component correction.
DarbouxFunction lemma_integrating_factor(const RatFunc& w1);
/// X(mu)/mu = -div X.
bool is_integrating_factor(const PlanarVectorField& X, const DarbouxFunction& mu);

/// ((-w + w2)/(-w + w1)) exp(int (w2 - w1) dx). NotASolution if w1, w2 solve different equations.
DarbouxFunction first_integral_two_solutions(const RatFunc& w1, const RatFunc& w2);
/// X(H)/H = 0.
bool is_first_integral(const PlanarVectorField& X, const DarbouxFunction& H);

/// num/den in Q(x)[w], denominators cleared and den normalized to leading coefficient 1.
struct BiRational {
    BiPoly num, den;
    std::string str(const std::string& xv = "x", const std::string& wv = "w") const;
};

/// (1/g^2) ((-n g w - g')/(-n g w + g'))^n.
BiRational rational_first_integral_cyclic(const RatFunc& g, int n);
/// X(num/den) = 0.
bool is_first_integral(const PlanarVectorField& X, const BiRational& H);

enum class FirstIntegralType { DarbouxSchwarzChristoffel, Darboux, Hyperelliptic, Rational, None };
std::string to_string(FirstIntegralType t);

struct FirstIntegralClass {
    FirstIntegralType type = FirstIntegralType::None;
    /// Rational Riccati solutions found (Case 1 only).
    std::vector<RatFunc> rational_solutions;
    /// Integrating factor from the first rational solution (Case 1 only).
    std::optional<DarbouxFunction> integrating_factor;
};

FirstIntegralClass classify_first_integral(const KovacicResult& res);

}  // namespace rg
