#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rg/bipoly.hpp"
#include "rg/exactalg.hpp"
#include "rg/odeforms.hpp"

namespace rg {

/// Numeric values for named parameters.
using Bindings = std::map<std::string, Scalar>;

struct Ast {
    enum class Kind { Int, Sym, Neg, Add, Sub, Mul, Div, Pow, Sqrt };
    Kind kind = Kind::Int;
    /// Byte offset of the node in the source.
    std::size_t pos = 0;
    Integer value;
    std::string name;
    long exponent = 0;
    std::vector<std::unique_ptr<Ast>> kids;

    /// Fully parenthesized rendering, used by tests to pin precedence.
    std::string sexpr() const;
};

/// Syntax only. Exponents are signed integer literals (right-associative, |e| <= 4096);
/// a literal 0 divisor is rejected. Accepts the UTF-8 operators U+2212, U+00D7, U+00B7 and U+00F7.
std::unique_ptr<Ast> parse_ast(std::string_view src);

/// Constant expression; every symbol must be bound.
Scalar parse_scalar(std::string_view src, const Bindings& params = {});
RatFunc parse_ratfunc(std::string_view src, const std::string& var = "x", const Bindings& params = {});
/// Element of Q(x)[y]; a divisor involving y must divide exactly.
BiPoly parse_bipoly(std::string_view src, const Bindings& params = {}, const std::string& xv = "x",
                    const std::string& yv = "y");
/// "P; Q" in the variables x and y.
PlanarVectorField parse_vectorfield(std::string_view src, const Bindings& params = {}, const std::string& xv = "x",
                                    const std::string& yv = "y");

/// "NAME=VALUE" with a constant VALUE; earlier bindings may be referenced.
std::pair<std::string, Scalar> parse_binding(std::string_view src, const Bindings& params = {});

/// "rho=...", "b1=...; b0=..." or "a0=...; a1=...; a2=..." (keys in any order, independent variable x).
using Equation = std::variant<ReducedODE, SecondOrderODE, RiccatiGeneral>;
Equation parse_equation(std::string_view src, const Bindings& params = {});

/// Canonical ASCII text; parsing it back returns the same value.
std::string print_canonical(const Scalar& s);
std::string print_canonical(const RatFunc& r, const std::string& var = "x");
std::string print_canonical(const BiPoly& f, const std::string& xv = "x", const std::string& yv = "y");
std::string print_canonical(const PlanarVectorField& X, const std::string& xv = "x", const std::string& yv = "y");
std::string print_canonical(const Equation& e);

}  // namespace rg
