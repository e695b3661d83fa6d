#include "rg/formal.hpp"

#include "rg/errors.hpp"

namespace rg {

Formal Formal::rat(const RatFunc& f) {
    return Formal(std::make_shared<const Node>(Node{Kind::Rat, f, BiPoly(), {}, Scalar()}));
}

Formal Formal::bi(const BiPoly& f) {
    return Formal(std::make_shared<const Node>(Node{Kind::Bi, RatFunc(), f, {}, Scalar()}));
}

Formal Formal::exp(const Formal& a) {
    return Formal(std::make_shared<const Node>(Node{Kind::Exp, RatFunc(), BiPoly(), {a}, Scalar()}));
}

Formal Formal::integral(const Formal& a) {
    return Formal(std::make_shared<const Node>(Node{Kind::Integral, RatFunc(), BiPoly(), {a}, Scalar()}));
}

Formal Formal::mul(std::vector<Formal> factors) {
    if (factors.size() == 1) return factors[0];
    return Formal(std::make_shared<const Node>(Node{Kind::Mul, RatFunc(), BiPoly(), std::move(factors), Scalar()}));
}

Formal Formal::pow(const Formal& base, const Scalar& exponent) {
    if (exponent.is_one()) return base;
    return Formal(std::make_shared<const Node>(Node{Kind::Pow, RatFunc(), BiPoly(), {base}, exponent}));
}

Formal Formal::add(std::vector<Formal> terms) {
    if (terms.size() == 1) return terms[0];
    return Formal(std::make_shared<const Node>(Node{Kind::Add, RatFunc(), BiPoly(), std::move(terms), Scalar()}));
}

Formal Formal::dx() const {
    switch (kind()) {
        case Kind::Rat:
            return rat(as_rat().derivative());
        case Kind::Bi:
            return bi(as_bi().dx());
        case Kind::Exp:
            return mul({*this, children()[0].dx()});
        case Kind::Integral:
            return children()[0];
        case Kind::Mul: {
            std::vector<Formal> terms;
            for (std::size_t i = 0; i < children().size(); ++i) {
                std::vector<Formal> f = children();
                f[i] = f[i].dx();
                terms.push_back(mul(f));
            }
            return add(terms);
        }
        case Kind::Pow:
            return mul({rat(RatFunc(exponent())), pow(children()[0], exponent() - Scalar(1)), children()[0].dx()});
        case Kind::Add: {
            std::vector<Formal> terms;
            for (auto& c : children()) terms.push_back(c.dx());
            return add(terms);
        }
    }
    throw InvalidArgument("unknown formal node");
}

std::optional<RatFunc> Formal::log_derivative() const {
    switch (kind()) {
        case Kind::Rat:
            if (as_rat().is_zero()) return std::nullopt;
            return as_rat().derivative() / as_rat();
        case Kind::Bi:
            if (as_bi().degree_y() > 0 || as_bi().is_zero()) return std::nullopt;
            return as_bi().coeff(0).derivative() / as_bi().coeff(0);
        case Kind::Exp: {
            const Formal& a = children()[0];
            if (a.kind() == Kind::Integral && a.children()[0].kind() == Kind::Rat) return a.children()[0].as_rat();
            if (a.kind() == Kind::Rat) return a.as_rat().derivative();
            return std::nullopt;
        }
        case Kind::Mul: {
            RatFunc acc;
            for (auto& c : children()) {
                auto l = c.log_derivative();
                if (!l) return std::nullopt;
                acc += *l;
            }
            return acc;
        }
        case Kind::Pow: {
            auto l = children()[0].log_derivative();
            if (!l) return std::nullopt;
            return RatFunc(exponent()) * *l;
        }
        default:
            return std::nullopt;
    }
}

std::string Formal::str(const std::string& xv, const std::string& wv) const {
    switch (kind()) {
        case Kind::Rat:
            return "(" + as_rat().str(xv) + ")";
        case Kind::Bi:
            return "(" + as_bi().str(xv, wv) + ")";
        case Kind::Exp:
            return "exp(" + children()[0].str(xv, wv) + ")";
        case Kind::Integral:
            return "int(" + children()[0].str(xv, wv) + ", " + xv + ")";
        case Kind::Mul: {
            std::string s;
            for (auto& c : children()) s += (s.empty() ? "" : "*") + c.str(xv, wv);
            return s;
        }
        case Kind::Pow:
            return children()[0].str(xv, wv) + "^(" + exponent().str() + ")";
        case Kind::Add: {
            std::string s;
            for (auto& c : children()) s += (s.empty() ? "" : " + ") + c.str(xv, wv);
            return "(" + s + ")";
        }
    }
    return "";
}

Formal DarbouxFunction::to_formal() const {
    std::vector<Formal> f;
    for (auto& [p, k] : factors) f.push_back(Formal::pow(Formal::bi(p), k));
    if (!exp_integral.is_zero()) f.push_back(Formal::exp(Formal::integral(Formal::rat(exp_integral))));
    if (!exp_plain.is_zero()) f.push_back(Formal::exp(Formal::bi(exp_plain)));
    if (f.empty()) return Formal::rat(RatFunc(1));
    return Formal::mul(f);
}

std::pair<BiPoly, BiPoly> log_derivative_along(const PlanarVectorField& X, const DarbouxFunction& F) {
    // sum k_i X(f_i)/f_i + P*g + X(h), over the common denominator prod f_i.
    BiPoly den(1);
    for (auto& [f, k] : F.factors) den = den * f;
    BiPoly num = (X.P * BiPoly(F.exp_integral) + X.apply(F.exp_plain)) * den;
    for (std::size_t i = 0; i < F.factors.size(); ++i) {
        BiPoly term = BiPoly(RatFunc(F.factors[i].second)) * X.apply(F.factors[i].first);
        for (std::size_t j = 0; j < F.factors.size(); ++j)
            if (j != i) term = term * F.factors[j].first;
        num += term;
    }
    return {num, den};
}

}  // namespace rg
