#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rg/darboux.hpp"
#include "rg/kovacic.hpp"
#include "rg/specialfn.hpp"

namespace rg {

using Trace = std::vector<std::string>;

/// x' = x, y' = eps x + lambda y + b20 x^2 + b11 x y + b02 y^2.
struct S1Params {
    Scalar eps, lambda, b20, b11, b02;
};

/// x' = y, y' = eps x + lambda y + b20 x^2 + b11 x y + b02 y^2.
struct S2Params {
    Scalar eps, lambda, b20, b11, b02;
};

struct S1Analysis {
    /// kappa for the chosen square root of the discriminant, mu = lambda / 2.
    Scalar kappa, mu, sqrt_disc;
    /// Reduced equation before rescaling: (lambda^2-1)/(4x^2) + (b11(lambda-1)/2 - eps b02)/x + disc/4.
    RatFunc rho;
    CriterionVerdict martinet_ramis;
    /// b02 = lambda = 0.
    bool a1 = false;
    /// b02 = 0 and lambda a negative rational.
    bool b1 = false;
    int kovacic_case = 4;
    Trace trace;
};

/// Throws DegenerateDiscriminant when b11^2 - 4 b20 b02 = 0.
S1Analysis s1_analyze(const S1Params& p);

enum class S2Class { Bernoulli, Linear, Separable, Lienard, Unclassified };
std::string to_string(S2Class c);
/// First matching clause: lambda = b11 = 0; eps = b20 = 0; b20 = b02 = lambda = 0 with eps b11 != 0; b02 = 0.
S2Class s2_classify(const S2Params& p);

/// Q d/dx + ((lambda/mu) Q + (Q' - L) v + mu v^2) d/dv in the variables (x, v).
PlanarVectorField orth_lienard_field(const OrthFamilyRow& row, int n, const Scalar& mu);
/// mu v P_n + Q P_n' with its cofactor, verified against orth_lienard_field.
AlgebraicCurve orth_invariant_curve(const OrthFamilyRow& row, int n, const Scalar& mu);

/// y y' = (a(2m+k) x^(2k) + b(2m-k) x^(m-k-1)) y - (a^2 m x^(4k) + c x^(2k) + b^2 m) x^(2m-2k-1).
struct Lienard1Params {
    Scalar a, b, c, m, k;
};

struct Lienard1Result {
    Scalar mu;
    /// nu^2 + nu + nu_const = 0.
    Scalar nu_const;
    std::vector<Scalar> nu_roots;
    /// Verdict of the closed-form proposition; a Kimura-only success is reported with its row.
    CriterionVerdict verdict;
    /// Kimura on the exponent differences (mu, mu, 2 nu + 1).
    CriterionVerdict kimura;
    Trace trace;
};

/// (1 - t^2) u'' - 2 t u' + (nu(nu+1) - mu^2/(1 - t^2)) u = 0 with nu(nu+1) = -nu_const.
SecondOrderODE legendre_equation(const Scalar& mu, const Scalar& nu_const);

/// Throws SingularParameterCombination when m = 0 or m c - 2 a b m^2 = 0; Unsupported when nu leaves the tower.
Lienard1Result lienard1_reduce(const Lienard1Params& p);

/// dx/dw = A(x) + B(x) w with A = a + b x + c x^2, B = alpha + beta x + gamma x^2.
struct AbelLienardParams {
    Scalar a, b, c, alpha, beta, gamma;
};

struct AbelLienardResult {
    /// Reduced potential in the independent variable of the Riccati form.
    RatFunc rho;
    /// Potential after tau = gamma x + c (gamma != 0).
    std::optional<RatFunc> rho_tau;
    /// z = scale * tau normalizes the leading coefficient to 1.
    std::optional<Scalar> scale;
    std::optional<BiconfluentParams> delta;
    CriterionVerdict verdict;
    int kovacic_case = 4;
    Trace trace;
};

/// The closed form of the reduced potential.
RatFunc abel_lienard_rho(const AbelLienardParams& p);
/// The same potential through transform_B and transform_S.
RatFunc abel_lienard_rho_pipeline(const AbelLienardParams& p);
AbelLienardResult abel_lienard_reduce(const AbelLienardParams& p);

/// r(s x + t0).
RatFunc affine_substitute(const RatFunc& r, const Scalar& s, const Scalar& t0);

/// -((1-l^2)/(4x^2) + (1-m^2)/(4(x-1)^2) + (1-n^2+l^2+m^2)/(4x(x-1))).
RatFunc weil_hypergeometric_rho(const Scalar& l, const Scalar& m, const Scalar& n);
/// Reduced hypergeometric equation with exponent differences l at 0, m at 1 and n at infinity.
RatFunc hypergeometric_rho(const Scalar& l, const Scalar& m, const Scalar& n);
/// Reduced form of y'' + (7x-4)/(6x(x-1)) y' - (36 nu^2 - 1)/(144 x(x-1)) y = 0.
RatFunc weil_second_rho(const Scalar& nu);
/// 9x^4/4 + 3 d2 x^2/2 - d1 x + d2^2/4 - d0.
RatFunc triconfluent_rho(const Scalar& d0, const Scalar& d1, const Scalar& d2);

struct WorkedExample {
    std::string name;
    std::string params;
    KovacicResult result;
    bool verified = false;
    FirstIntegralType first_integral = FirstIntegralType::None;
};

std::vector<WorkedExample> worked_examples();

}  // namespace rg
