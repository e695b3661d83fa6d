#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rg/bipoly.hpp"

namespace rg {

/// Unevaluated Liouvillian expression in x (and possibly the fiber variable w).
///
/// Integrals are never computed; the only rewrite is d/dx of an integral
/// node returning its integrand.
class Formal {
public:
    enum class Kind { Rat, Bi, Exp, Integral, Mul, Pow, Add };

    static Formal rat(const RatFunc& f);
    static Formal bi(const BiPoly& f);
    static Formal exp(const Formal& a);
    /// Integral with respect to x.
    static Formal integral(const Formal& a);
    static Formal mul(std::vector<Formal> factors);
    static Formal pow(const Formal& base, const Scalar& exponent);
    static Formal add(std::vector<Formal> terms);

    Kind kind() const { return node_->kind; }
    const RatFunc& as_rat() const { return node_->rat; }
    const BiPoly& as_bi() const { return node_->bipoly; }
    const std::vector<Formal>& children() const { return node_->kids; }
    const Scalar& exponent() const { return node_->exponent; }

    /// Derivative in x of an expression free of the fiber variable.
    Formal dx() const;
    /// x-derivative divided by the expression, when it is a product of powers of
    /// rational functions and exponentials of integrals of rational functions.
    std::optional<RatFunc> log_derivative() const;

    std::string str(const std::string& xv = "x", const std::string& wv = "w") const;

private:
    struct Node {
        Kind kind;
        RatFunc rat;
        BiPoly bipoly;
        std::vector<Formal> kids;
        Scalar exponent;
    };
    std::shared_ptr<const Node> node_;
    explicit Formal(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
};

/// Product prod f_i^{k_i} * exp(integral g dx) * exp(h) with f_i in Q(x)[w].
///
/// Its logarithmic derivative along a planar field is rational, which is what
/// the integrating-factor and first-integral identities are checked against.
struct DarbouxFunction {
    std::vector<std::pair<BiPoly, Scalar>> factors;
    RatFunc exp_integral;
    BiPoly exp_plain;

    Formal to_formal() const;
};

/// X(F)/F as a quotient num/den of elements of Q(x)[w].
std::pair<BiPoly, BiPoly> log_derivative_along(const PlanarVectorField& X, const DarbouxFunction& F);

}  // namespace rg
