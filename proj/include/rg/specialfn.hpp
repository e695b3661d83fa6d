#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rg/exactalg.hpp"
#include "rg/odeforms.hpp"

namespace rg {

enum class Verdict { Integrable, NotIntegrable, Inconclusive };
std::string to_string(Verdict v);

/// Answer of a closed-form test together with the condition that decided it.
struct CriterionVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::string criterion;
    /// Short name of the clause that fired ("condition (i)", "row 2", "clause (1)", ...), empty if none.
    std::string condition;
    std::string detail;

    bool integrable() const { return verdict == Verdict::Integrable; }
};

/// Exponent differences of a hypergeometric equation at 0, 1 and infinity.
struct ExponentDiffs {
    Scalar lambda, mu, nu;
    static ExponentDiffs from_exponents(const Scalar& a, const Scalar& a1, const Scalar& b, const Scalar& b1,
                                        const Scalar& c, const Scalar& c1);
};

/// xi'' = (1/4 - kappa/x + (4 mu^2 - 1)/(4 x^2)) xi.
struct WhittakerParams {
    Scalar kappa, mu;
    RatFunc rho() const;
};

/// xi'' = (x^2 + d1 x + d1^2/4 - d2 + d3/(2x) + (d0^2 - 1)/(4x^2)) xi.
struct BiconfluentParams {
    Scalar delta0, delta1, delta2, delta3;
    RatFunc rho() const;
};

/// y'' + f'/(2f) y' - (n(n+1) x + B)/f y = 0 with f = 4x^3 - g2 x - g3.
struct LameParams {
    Scalar n, B, g2, g3;
    Poly f() const;
    SecondOrderODE ode() const;
};

CriterionVerdict kimura_test(const ExponentDiffs& e);

/// A signed permutation t of the differences placed in a table row with integer offsets.
struct KimuraMatch {
    int row = 0;
    std::vector<Scalar> t, offsets;
};
/// First match among the given 1-based table rows (all fifteen when empty).
std::optional<KimuraMatch> kimura_table_match(const ExponentDiffs& e, const std::vector<int>& rows = {});

struct MartinetRamisOptions {
    /// Whether 0 counts as a natural number in 1/2 + N.
    bool natural_includes_zero = true;
};
CriterionVerdict martinet_ramis_test(const WhittakerParams& p, const MartinetRamisOptions& opt = {});

/// y'' + y'/x + (x^2 - n^2)/x^2 y = 0.
SecondOrderODE bessel_equation(const Scalar& n);
CriterionVerdict bessel_test(const Scalar& n);

/// How the first-column entry of the second row is read.
enum class PiReading {
    /// Sub-diagonal d*xi and diagonal w + v, following the band pattern of the other rows.
    Banded,
    /// Entry d*xi*w + 1 in column 0 and v on the diagonal, as typeset.
    Literal,
};
/// The (d+1)x(d+1) band matrix: diagonal w + k(v + (k-1)a), super-diagonal (k+1)(u + k b),
/// sub-diagonal (d-k+1) xi in row k.
Matrix pi_matrix(int d, const Scalar& a, const Scalar& b, const Scalar& u, const Scalar& v, const Scalar& xi,
                 const Scalar& w, PiReading reading = PiReading::Banded);
Scalar pi_determinant(int d, const Scalar& a, const Scalar& b, const Scalar& u, const Scalar& v, const Scalar& xi,
                      const Scalar& w, PiReading reading = PiReading::Banded);

struct BiconfluentOptions {
    PiReading reading = PiReading::Banded;
    /// Use the typeset arguments (v = eps d1, xi = -2 eps, w = (eps d1 (1 + eps0 d0) - d3)/2) instead of the
    /// ones read off the Case 1 recurrence (v = -eps d1, xi = 2 eps, w = -(eps d1 (1 + eps0 d0) + d3)/2).
    bool printed_arguments = false;
};
CriterionVerdict biconfluent_heun_test(const BiconfluentParams& p, const BiconfluentOptions& opt = {});

enum class LameCase { LameHermite, BrioschiHalphenCrawford, Baldassarri, Generic };

struct LameClassification {
    LameCase kase = LameCase::Generic;
    std::string label;
    std::string detail;
    /// 1 (Lame function) or 2 (Hermite) in the Lame-Hermite case when Kovacic decided it.
    std::optional<int> subcase;
    std::optional<int> kovacic_case;
};

/// Throws InvalidArgument for a vanishing discriminant and Unsupported when f does not split (case (i) only).
LameClassification lame_classify(const LameParams& p);

enum class OrthFamily { Hermite, ChebyshevT, ChebyshevU, Legendre, Laguerre, AssocLaguerre, Gegenbauer, Jacobi, Bessel };

/// Q y'' + L y' + lambda(n) y = 0 for one classical family; m and nu are the family parameters.
struct OrthFamilyRow {
    OrthFamily family = OrthFamily::Hermite;
    std::string tag;
    Poly Q, L;
    Scalar m, nu;

    Scalar lambda(int n) const;
};

OrthFamilyRow orth_row(OrthFamily family, const Scalar& m = Scalar(), const Scalar& nu = Scalar());
std::vector<OrthFamilyRow> orth_table(const Scalar& m = Scalar(1), const Scalar& nu = Scalar(2));

/// Monic degree-n polynomial solution; GenerationFailed if there is none.
Poly orth_polynomial(const OrthFamilyRow& row, int n);

/// rho = (L/Q)'/2 - lambda/Q + (L/(2Q))^2 with the solution xi = pn * exp(int half_b1).
struct OrthReduced {
    ReducedODE eq;
    Poly pn;
    RatFunc half_b1;

    /// xi'' = rho xi, checked as (pn'' + 2 h pn' + (h' + h^2) pn) = rho pn with h = half_b1.
    bool verify() const;
};

OrthReduced orth_reduced_rho(const OrthFamilyRow& row, int n);

}  // namespace rg
