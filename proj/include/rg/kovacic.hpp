#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rg/exactalg.hpp"
#include "rg/formal.hpp"
#include "rg/odeforms.hpp"

namespace rg {

struct Case1Local {
    /// Sub-case label: c0..c3 or inf1..inf3.
    std::string subcase;
    LaurentHead head;
    Scalar alpha_plus, alpha_minus;
};

struct LocalData {
    PoleData point;
    /// Empty when the point rules out Case 1 (odd order >= 3 finite, odd order < 2 at infinity).
    std::optional<Case1Local> case1;
    /// Integer exponent sets; empty optional when the order is not covered.
    std::optional<std::vector<Scalar>> case2;
    /// Finite points only; at infinity the set depends on n, see case3_E_infinity.
    std::optional<std::vector<Scalar>> case3;
    /// Coefficient of (x-c)^-2, resp. x^-2 at infinity.
    Scalar b2;
};

struct Candidate {
    int m = 0;
    /// Case 1: '+' or '-' per point (finite poles, then infinity).
    std::string signs;
    /// Cases 2 and 3: chosen exponent per point.
    std::vector<Scalar> e;
    int n = 0;
};

struct Case1Result {
    RatFunc omega;
    Poly p;
    Candidate candidate;
    /// Dimension of the solution space of the P_m system.
    int nullity = 0;

    /// w = omega + P'/P, a rational solution of w' = r - w^2.
    RatFunc riccati_solution() const;
    /// xi_1 = P exp(int omega).
    Formal solution() const;
};

struct Case2Result {
    RatFunc theta;
    Poly p;
    RatFunc phi;
    /// omega^2 + c[1] omega + c[0] = 0 with c = (psi, -phi), psi = (phi' + phi^2)/2 - r.
    RatFunc c1, c0;
    Candidate candidate;
};

struct Case3Result {
    int n = 0;
    RatFunc theta;
    Poly s;
    Poly p;
    /// P_{-1}, P_0, ..., P_n of the recursion (index shifted by one).
    std::vector<Poly> chain;
    /// Coefficients of omega^0..omega^n: S^i P_i / (n-i)!.
    std::vector<RatFunc> omega_polynomial;
    Candidate candidate;
};

struct KovacicResult {
    int kase = 4;
    RatFunc r;
    std::optional<Case1Result> case1;
    std::optional<Case2Result> case2;
    std::optional<Case3Result> case3;
    /// Ordered trace lines: local data, candidate sets, trials.
    std::vector<std::string> trace;
    /// Number of (candidate, polynomial solve) trials per case 1..3.
    int trials[3] = {0, 0, 0};
};

LocalData classify_point_case1(const RatFunc& r, const PoleData& p);
/// Local data for every finite pole and infinity, in find_poles order.
std::vector<LocalData> local_data(const RatFunc& r);
/// Integer entries of {6 + (12k/n) sqrt(1+4b) : |k| <= 6} for the point at infinity.
std::vector<Scalar> case3_E_infinity(const LocalData& inf, int n);

/// Case 1 candidates in trial order (m ascending, then sign strings, '+' before '-').
std::vector<Candidate> case1_candidates(const std::vector<LocalData>& ld);

std::optional<Case1Result> case1(const RatFunc& r, std::vector<std::string>* trace = nullptr, int* trials = nullptr);
/// Every successful Case 1 candidate, distinct Riccati solutions only.
std::vector<Case1Result> case1_all(const RatFunc& r);
std::optional<Case2Result> case2(const RatFunc& r, std::vector<std::string>* trace = nullptr, int* trials = nullptr);
struct Case3Options {
    /// Use -((n-i)S' - S theta) P_i in the recursion instead of +((n-i)S' - S theta) P_i.
    /// The minus form rejects known tetrahedral instances; it is kept for comparison only.
    bool negated_middle_term = false;
};

std::optional<Case3Result> case3(const RatFunc& r, std::vector<std::string>* trace = nullptr, int* trials = nullptr,
                                 const Case3Options& opt = {});

KovacicResult solve_rlde(const ReducedODE& e);

/// xi_2 = xi_1 int exp(-2 int omega) / P^2 dx, kept unevaluated.
Formal second_solution(const Case1Result& res);

bool verify_case1(const RatFunc& r, const RatFunc& omega, const Poly& p);
/// The third-order equation for P with the given theta.
bool verify_case2(const RatFunc& r, const RatFunc& theta, const Poly& p);
/// Residue (u, v) of omega' + omega^2 - r modulo omega^2 + c1 omega + c0, as u omega + v.
std::pair<RatFunc, RatFunc> riccati_quadratic_residue(const RatFunc& r, const RatFunc& c1, const RatFunc& c0);
/// Recomputes the recursion from P_n = -P and checks P_{-1} = 0.
bool verify_case3(const RatFunc& r, int n, const RatFunc& theta, const Poly& s, const Poly& p);
/// Re-verifies whichever case the result holds.
bool verify(const KovacicResult& res);

}  // namespace rg
