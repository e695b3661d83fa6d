#include "rg/exprparse.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>

#include "rg/errors.hpp"

namespace rg {

namespace {

constexpr long kMaxExponent = 4096;

enum class Tok { Int, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;
};

std::string describe(Tok t) {
    switch (t) {
        case Tok::Int:
            return "integer";
        case Tok::Ident:
            return "identifier";
        case Tok::Plus:
            return "'+'";
        case Tok::Minus:
            return "'-'";
        case Tok::Star:
            return "'*'";
        case Tok::Slash:
            return "'/'";
        case Tok::Caret:
            return "'^'";
        case Tok::LParen:
            return "'('";
        case Tok::RParen:
            return "')'";
        case Tok::End:
            return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(std::string_view s) {
    struct Alias {
        std::string_view bytes;
        Tok kind;
    };
    static const Alias aliases[] = {
        {"\xE2\x88\x92", Tok::Minus},  // U+2212
        {"\xC3\x97", Tok::Star},       // U+00D7
        {"\xC2\xB7", Tok::Star},       // U+00B7
        {"\xC3\xB7", Tok::Slash},      // U+00F7
    };
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Int, i, std::string(s.substr(i, j - i))});
            i = j;
            continue;
        }
        if (std::isalpha(c) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, i, std::string(s.substr(i, j - i))});
            i = j;
            continue;
        }
        std::optional<Tok> k;
        std::size_t len = 1;
        switch (c) {
            case '+':
                k = Tok::Plus;
                break;
            case '-':
                k = Tok::Minus;
                break;
            case '*':
                k = Tok::Star;
                break;
            case '/':
                k = Tok::Slash;
                break;
            case '^':
                k = Tok::Caret;
                break;
            case '(':
                k = Tok::LParen;
                break;
            case ')':
                k = Tok::RParen;
                break;
            default:
                for (const Alias& a : aliases)
                    if (s.substr(i, a.bytes.size()) == a.bytes) {
                        k = a.kind;
                        len = a.bytes.size();
                    }
        }
        if (!k) throw SyntaxError(i, "operand or operator", "unexpected character");
        out.push_back({*k, i, std::string(s.substr(i, len))});
        i += len;
    }
    out.push_back({Tok::End, s.size(), ""});
    return out;
}

std::unique_ptr<Ast> node(Ast::Kind k, std::size_t pos) {
    auto n = std::make_unique<Ast>();
    n->kind = k;
    n->pos = pos;
    return n;
}

/// expr := term {('+'|'-') term}; term := unary {('*'|'/') unary}; unary := ('-'|'+') unary | power;
/// power := primary ['^' exponent]; exponent := ['-'|'+'] INT ['^' exponent] | '(' exponent ')'.
class Parser {
public:
    explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

    std::unique_ptr<Ast> parse_all() {
        auto e = expr();
        if (peek().kind != Tok::End) fail("operator or end of input");
        return e;
    }

private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;

    const Token& peek() const { return toks_[i_]; }
    const Token& next() { return toks_[i_++]; }
    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        throw SyntaxError(t.pos, expected, "unexpected " + (t.kind == Tok::End ? describe(t.kind) : "'" + t.text + "'"));
    }
    void expect(Tok k) {
        if (peek().kind != k) fail(describe(k));
        ++i_;
    }

    std::unique_ptr<Ast> expr() {
        auto lhs = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = next();
            auto n = node(op.kind == Tok::Plus ? Ast::Kind::Add : Ast::Kind::Sub, op.pos);
            n->kids.push_back(std::move(lhs));
            n->kids.push_back(term());
            lhs = std::move(n);
        }
        return lhs;
    }

    std::unique_ptr<Ast> term() {
        auto lhs = unary();
        while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
            const Token& op = next();
            bool div = op.kind == Tok::Slash;
            auto n = node(div ? Ast::Kind::Div : Ast::Kind::Mul, op.pos);
            n->kids.push_back(std::move(lhs));
            std::size_t at = peek().pos;
            auto rhs = unary();
            if (div && rhs->kind == Ast::Kind::Int && rhs->value == 0)
                throw SyntaxError(at, "nonzero divisor", "division by zero");
            n->kids.push_back(std::move(rhs));
            lhs = std::move(n);
        }
        return lhs;
    }

    std::unique_ptr<Ast> unary() {
        if (peek().kind == Tok::Minus) {
            auto n = node(Ast::Kind::Neg, next().pos);
            n->kids.push_back(unary());
            return n;
        }
        if (peek().kind == Tok::Plus) {
            next();
            return unary();
        }
        return power();
    }

    std::unique_ptr<Ast> power() {
        auto base = primary();
        if (peek().kind != Tok::Caret) return base;
        std::size_t at = next().pos;
        auto n = node(Ast::Kind::Pow, at);
        n->exponent = exponent();
        n->kids.push_back(std::move(base));
        return n;
    }

    long exponent() {
        if (peek().kind == Tok::LParen) {
            next();
            long e = exponent();
            expect(Tok::RParen);
            return tower_exp(e);
        }
        bool neg = false;
        if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) neg = next().kind == Tok::Minus;
        if (peek().kind != Tok::Int) fail("integer exponent");
        const Token& t = next();
        Integer v(t.text);
        if (v > kMaxExponent) throw SyntaxError(t.pos, "exponent of at most 4096", "exponent too large");
        long e = tower_exp(v.get_si());
        return neg ? -e : e;
    }

    /// Right-associative continuation a^b^c = a^(b^c) inside an exponent.
    long tower_exp(long base) {
        if (peek().kind != Tok::Caret) return base;
        std::size_t at = next().pos;
        long e = exponent();
        if (e < 0 && base != 1 && base != -1) throw SyntaxError(at, "integer exponent", "fractional exponent");
        Integer r = 1;
        if (base == 1 || base == -1) {
            r = (base == -1 && (e % 2 != 0)) ? -1 : 1;
        } else {
            for (long k = 0; k < e; ++k) {
                r *= base;
                if (abs(r) > kMaxExponent) throw SyntaxError(at, "exponent of at most 4096", "exponent too large");
            }
        }
        return r.get_si();
    }

    std::unique_ptr<Ast> primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Int: {
                next();
                auto n = node(Ast::Kind::Int, t.pos);
                n->value = Integer(t.text);
                return n;
            }
            case Tok::Ident: {
                next();
                if (t.text == "sqrt") {
                    auto n = node(Ast::Kind::Sqrt, t.pos);
                    expect(Tok::LParen);
                    n->kids.push_back(expr());
                    expect(Tok::RParen);
                    return n;
                }
                auto n = node(Ast::Kind::Sym, t.pos);
                n->name = t.text;
                return n;
            }
            case Tok::LParen: {
                next();
                auto e = expr();
                expect(Tok::RParen);
                return e;
            }
            default:
                fail("integer, identifier, sqrt or '('");
        }
    }
};

template <class T>
T power_of(const T& base, long e) {
    T acc(1), b = base;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) acc = acc * b;
        if (k > 1) b = b * b;
    }
    return acc;
}

bool has_symbols(const Ast& a) {
    if (a.kind == Ast::Kind::Sym) return true;
    for (const auto& k : a.kids)
        if (has_symbols(*k)) return true;
    return false;
}

/// Evaluation into a ring T with field operations supplied by the caller.
template <class T>
struct Evaluator {
    std::function<std::optional<T>(const Ast&)> symbol;
    std::function<T(const T&, const T&, const Ast&)> divide;
    std::function<T(const Scalar&)> lift;
    std::function<bool(const T&)> is_zero;
    const Bindings* params = nullptr;

    T eval(const Ast& a) const {
        switch (a.kind) {
            case Ast::Kind::Int:
                return lift(Scalar(a.value));
            case Ast::Kind::Sym: {
                if (auto v = symbol(a)) return *v;
                throw SyntaxError(a.pos, "bound parameter or variable", "unknown symbol '" + a.name + "'");
            }
            case Ast::Kind::Neg:
                return -eval(*a.kids[0]);
            case Ast::Kind::Add:
                return eval(*a.kids[0]) + eval(*a.kids[1]);
            case Ast::Kind::Sub:
                return eval(*a.kids[0]) - eval(*a.kids[1]);
            case Ast::Kind::Mul:
                return eval(*a.kids[0]) * eval(*a.kids[1]);
            case Ast::Kind::Div: {
                T d = eval(*a.kids[1]);
                if (is_zero(d)) throw SyntaxError(a.pos, "nonzero divisor", "division by zero");
                return divide(eval(*a.kids[0]), d, a);
            }
            case Ast::Kind::Pow: {
                T b = eval(*a.kids[0]);
                if (a.exponent >= 0) return power_of(b, a.exponent);
                if (is_zero(b)) throw SyntaxError(a.pos, "nonzero base", "zero to a negative power");
                return divide(lift(Scalar(1)), power_of(b, -a.exponent), a);
            }
            case Ast::Kind::Sqrt: {
                const Ast& arg = *a.kids[0];
                if (has_symbols(arg) && !constant_symbols(arg))
                    throw SyntaxError(arg.pos, "constant radicand", "sqrt of a non-constant expression");
                Scalar v = eval_scalar(arg);
                if (!v.is_rational()) throw SyntaxError(arg.pos, "rational radicand", "nested radical");
                return lift(v.sqrt());
            }
        }
        return lift(Scalar());
    }

    bool constant_symbols(const Ast& a) const {
        if (a.kind == Ast::Kind::Sym) return params && params->count(a.name);
        for (const auto& k : a.kids)
            if (!constant_symbols(*k)) return false;
        return true;
    }

    Scalar eval_scalar(const Ast& a) const;
};

Evaluator<Scalar> scalar_evaluator(const Bindings& params) {
    Evaluator<Scalar> ev;
    ev.params = &params;
    ev.symbol = [&params](const Ast& a) -> std::optional<Scalar> {
        auto it = params.find(a.name);
        if (it == params.end()) return std::nullopt;
        return it->second;
    };
    ev.divide = [](const Scalar& n, const Scalar& d, const Ast&) { return n / d; };
    ev.lift = [](const Scalar& s) { return s; };
    ev.is_zero = [](const Scalar& s) { return s.is_zero(); };
    return ev;
}

template <class T>
Scalar Evaluator<T>::eval_scalar(const Ast& a) const {
    static const Bindings none;
    return scalar_evaluator(params ? *params : none).eval(a);
}

void check_names(const Bindings& params, std::initializer_list<std::string> vars) {
    for (const std::string& v : vars)
        if (params.count(v)) throw InvalidArgument("parameter name '" + v + "' collides with a variable");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// Re-raises a syntax error with positions shifted by the offset of a sub-string.
template <class F>
auto at_offset(std::size_t offset, F&& f) {
    try {
        return f();
    } catch (const SyntaxError& e) {
        std::string msg = e.what();
        msg = msg.substr(0, msg.find(" at position "));
        throw SyntaxError(e.position + offset, e.expected, msg);
    }
}

}  // namespace

std::string Ast::sexpr() const {
    switch (kind) {
        case Kind::Int:
            return value.get_str();
        case Kind::Sym:
            return name;
        case Kind::Neg:
            return "(- " + kids[0]->sexpr() + ")";
        case Kind::Add:
            return "(+ " + kids[0]->sexpr() + " " + kids[1]->sexpr() + ")";
        case Kind::Sub:
            return "(- " + kids[0]->sexpr() + " " + kids[1]->sexpr() + ")";
        case Kind::Mul:
            return "(* " + kids[0]->sexpr() + " " + kids[1]->sexpr() + ")";
        case Kind::Div:
            return "(/ " + kids[0]->sexpr() + " " + kids[1]->sexpr() + ")";
        case Kind::Pow:
            return "(^ " + kids[0]->sexpr() + " " + std::to_string(exponent) + ")";
        case Kind::Sqrt:
            return "(sqrt " + kids[0]->sexpr() + ")";
    }
    return "";
}

std::unique_ptr<Ast> parse_ast(std::string_view src) { return Parser(src).parse_all(); }

Scalar parse_scalar(std::string_view src, const Bindings& params) {
    auto ast = parse_ast(src);
    return scalar_evaluator(params).eval(*ast);
}

RatFunc parse_ratfunc(std::string_view src, const std::string& var, const Bindings& params) {
    check_names(params, {var});
    auto ast = parse_ast(src);
    Evaluator<RatFunc> ev;
    ev.params = &params;
    ev.symbol = [&](const Ast& a) -> std::optional<RatFunc> {
        if (a.name == var) return RatFunc::x();
        auto it = params.find(a.name);
        if (it == params.end()) return std::nullopt;
        return RatFunc(it->second);
    };
    ev.divide = [](const RatFunc& n, const RatFunc& d, const Ast&) { return n / d; };
    ev.lift = [](const Scalar& s) { return RatFunc(s); };
    ev.is_zero = [](const RatFunc& r) { return r.is_zero(); };
    return ev.eval(*ast);
}

BiPoly parse_bipoly(std::string_view src, const Bindings& params, const std::string& xv, const std::string& yv) {
    check_names(params, {xv, yv});
    auto ast = parse_ast(src);
    Evaluator<BiPoly> ev;
    ev.params = &params;
    ev.symbol = [&](const Ast& a) -> std::optional<BiPoly> {
        if (a.name == xv) return BiPoly::x();
        if (a.name == yv) return BiPoly::y();
        auto it = params.find(a.name);
        if (it == params.end()) return std::nullopt;
        return BiPoly(it->second);
    };
    ev.divide = [&yv](const BiPoly& n, const BiPoly& d, const Ast& at) {
        if (d.is_x_only()) return n * BiPoly(RatFunc(1) / d.coeff(0));
        if (auto q = n.divide_exact(d)) return *q;
        throw SyntaxError(at.pos, "divisor free of " + yv, "division by a non-factor involving " + yv);
    };
    ev.lift = [](const Scalar& s) { return BiPoly(s); };
    ev.is_zero = [](const BiPoly& b) { return b.is_zero(); };
    return ev.eval(*ast);
}

PlanarVectorField parse_vectorfield(std::string_view src, const Bindings& params, const std::string& xv,
                                    const std::string& yv) {
    std::size_t semi = src.find(';');
    if (semi == std::string_view::npos) throw SyntaxError(src.size(), "';'", "missing second component");
    if (src.find(';', semi + 1) != std::string_view::npos)
        throw SyntaxError(src.find(';', semi + 1), "end of input", "too many components");
    BiPoly P = parse_bipoly(src.substr(0, semi), params, xv, yv);
    BiPoly Q = at_offset(semi + 1, [&] { return parse_bipoly(src.substr(semi + 1), params, xv, yv); });
    return PlanarVectorField{P, Q};
}

std::pair<std::string, Scalar> parse_binding(std::string_view src, const Bindings& params) {
    std::size_t eq = src.find('=');
    if (eq == std::string_view::npos) throw SyntaxError(src.size(), "'='", "binding must read NAME=VALUE");
    std::string_view name = trim(src.substr(0, eq));
    bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char c : name) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok || name == "sqrt") throw SyntaxError(0, "identifier", "invalid parameter name");
    Scalar v = at_offset(eq + 1, [&] { return parse_scalar(src.substr(eq + 1), params); });
    return {std::string(name), v};
}

Equation parse_equation(std::string_view src, const Bindings& params) {
    std::map<std::string, RatFunc> parts;
    std::size_t start = 0;
    while (start <= src.size()) {
        std::size_t end = src.find(';', start);
        if (end == std::string_view::npos) end = src.size();
        std::string_view piece = src.substr(start, end - start);
        if (!trim(piece).empty()) {
            std::size_t eq = piece.find('=');
            if (eq == std::string_view::npos) throw SyntaxError(start, "KEY=EXPR", "missing '='");
            std::string key(trim(piece.substr(0, eq)));
            static const std::vector<std::string> keys = {"rho", "b1", "b0", "a0", "a1", "a2"};
            if (std::find(keys.begin(), keys.end(), key) == keys.end())
                throw SyntaxError(start, "rho, b1, b0, a0, a1 or a2", "unknown key '" + key + "'");
            if (parts.count(key)) throw SyntaxError(start, "distinct keys", "duplicate key '" + key + "'");
            std::size_t off = start + eq + 1;
            parts[key] = at_offset(off, [&] { return parse_ratfunc(piece.substr(eq + 1), "x", params); });
        }
        start = end + 1;
    }
    auto has = [&](const char* k) { return parts.count(k) > 0; };
    if (parts.size() == 1 && has("rho")) return ReducedODE{parts["rho"]};
    if (parts.size() == 2 && has("b1") && has("b0")) return SecondOrderODE{parts["b1"], parts["b0"]};
    if (parts.size() == 3 && has("a0") && has("a1") && has("a2")) return RiccatiGeneral{parts["a0"], parts["a1"], parts["a2"]};
    throw SyntaxError(0, "rho=...; or b1=...; b0=...; or a0=...; a1=...; a2=...", "incomplete equation");
}

std::string print_canonical(const Scalar& s) { return s.str(); }
std::string print_canonical(const RatFunc& r, const std::string& var) { return r.str(var); }
std::string print_canonical(const BiPoly& f, const std::string& xv, const std::string& yv) { return f.str(xv, yv); }
std::string print_canonical(const PlanarVectorField& X, const std::string& xv, const std::string& yv) {
    return X.P.str(xv, yv) + "; " + X.Q.str(xv, yv);
}

std::string print_canonical(const Equation& e) {
    if (auto* r = std::get_if<ReducedODE>(&e)) return "rho=" + r->rho.str();
    if (auto* s = std::get_if<SecondOrderODE>(&e)) return "b1=" + s->b1.str() + "; b0=" + s->b0.str();
    const auto& g = std::get<RiccatiGeneral>(e);
    return "a0=" + g.a0.str() + "; a1=" + g.a1.str() + "; a2=" + g.a2.str();
}

}  // namespace rg
