#include "rg/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rg/errors.hpp"

namespace rg {

namespace {

constexpr unsigned long kTrialLimit = 10000000UL;
constexpr int kDenestBudget = 4;

// Prime factors of a positive square-free integer, ascending.
std::vector<Integer> prime_factors(Integer m) {
    std::vector<Integer> out;
    if (m < 0) m = -m;
    for (unsigned long p = 2; m > 1; p += (p == 2 ? 1 : 2)) {
        if (p > kTrialLimit) throw Unsupported("radicand too large to factor: " + m.get_str());
        Integer pp = p;
        if (pp * pp > m) {
            out.push_back(m);
            break;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out.push_back(pp);
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) m /= p;
        }
    }
    return out;
}

Integer radical_signed(const Radical& r) { return r.imag ? Integer(-r.m) : r.m; }

// GF(2) vector of atoms: sorted list of primes, with -1 for the imaginary unit.
std::vector<Integer> atom_vector(const Integer& signed_sf) {
    std::vector<Integer> v;
    if (signed_sf < 0) v.push_back(Integer(-1));
    for (auto& p : prime_factors(abs(signed_sf))) v.push_back(p);
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Integer> sym_diff(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

struct TowerState {
    int limit = 2;
    // Echelon basis: each vector's pivot is its largest atom, pivots distinct.
    std::vector<std::vector<Integer>> basis;
};

thread_local TowerState g_tower;
thread_local int g_default_limit = 2;

std::vector<Integer> reduce(std::vector<Integer> v) {
    bool changed = true;
    while (changed && !v.empty()) {
        changed = false;
        for (auto& b : g_tower.basis) {
            if (!v.empty() && b.back() == v.back()) {
                v = sym_diff(v, b);
                changed = true;
                break;
            }
        }
    }
    return v;
}

Radical radical_mul(const Radical& a, const Radical& b, Rational& coeff) {
    Radical r;
    Integer g = gcd(a.m, b.m);
    r.m = (a.m / g) * (b.m / g);
    coeff *= g;
    r.imag = a.imag != b.imag;
    if (a.imag && b.imag) coeff = -coeff;
    return r;
}

}  // namespace

std::pair<Integer, Integer> squarefree_decompose(const Integer& n) {
    if (n == 0) throw InvalidArgument("squarefree_decompose of zero");
    Integer sign = n < 0 ? -1 : 1;
    Integer rem = abs(n);
    Integer sf = 1, f = 1;
    for (unsigned long p = 2;; p += (p == 2 ? 1 : 2)) {
        Integer pp = p;
        if (pp * pp * pp > rem) break;
        if (p > kTrialLimit) throw Unsupported("integer too large to decompose: " + n.get_str());
        int e = 0;
        while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            rem /= p;
            ++e;
        }
        for (int i = 0; i + 1 < e; i += 2) f *= p;
        if (e % 2) sf *= p;
    }
    // rem has at most two prime factors left.
    if (rem > 1) {
        if (mpz_perfect_square_p(rem.get_mpz_t())) {
            Integer s;
            mpz_sqrt(s.get_mpz_t(), rem.get_mpz_t());
            f *= s;
        } else {
            sf *= rem;
        }
    }
    return {sign * sf, f};
}

// ---------------------------------------------------------------- Tower

int Tower::depth_limit() { return g_default_limit; }

void Tower::set_depth_limit(int depth) {
    if (depth < 0) throw InvalidArgument("tower depth must be non-negative");
    g_default_limit = depth;
    g_tower.limit = depth;
}

int Tower::depth() { return static_cast<int>(g_tower.basis.size()); }

bool Tower::contains(const Integer& s) { return reduce(atom_vector(s)).empty(); }

void Tower::adjoin(const Integer& s) {
    auto v = reduce(atom_vector(s));
    if (v.empty()) return;
    if (static_cast<int>(g_tower.basis.size()) >= g_tower.limit)
        throw Unsupported("square root of " + s.get_str() + " exceeds tower depth " + std::to_string(g_tower.limit));
    g_tower.basis.push_back(std::move(v));
}

void Tower::absorb(const Scalar& s) {
    for (auto& [r, c] : s.terms())
        if (!r.is_one()) adjoin(radical_signed(r));
}

std::vector<Integer> Tower::radicands() {
    std::vector<Integer> out;
    for (auto& b : g_tower.basis) {
        Integer prod = 1;
        for (auto& a : b) prod *= a;
        out.push_back(prod);
    }
    return out;
}

TowerScope::TowerScope(int depth_limit) : saved_limit_(g_tower.limit), saved_basis_(std::move(g_tower.basis)) {
    g_tower.basis.clear();
    g_tower.limit = depth_limit;
}

TowerScope::~TowerScope() {
    g_tower.limit = saved_limit_;
    g_tower.basis = std::move(saved_basis_);
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(const Rational& q) {
    if (q != 0) {
        Rational c = q;
        c.canonicalize();
        terms_.emplace_back(Radical{}, c);
    }
}

Scalar Scalar::frac(long num, long den) { return Scalar(Rational(num, den)); }

Scalar Scalar::radical(const Rational& radicand) {
    if (radicand == 0) return Scalar();
    Integer a = radicand.get_num(), b = radicand.get_den();
    auto [sf, f] = squarefree_decompose(a * b);
    Scalar out;
    Radical r{abs(sf), sf < 0};
    out.terms_.emplace_back(r, Rational(f, b));
    out.terms_.back().second.canonicalize();
    return out;
}

bool Scalar::is_one() const { return terms_.size() == 1 && terms_[0].first.is_one() && terms_[0].second == 1; }

bool Scalar::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

bool Scalar::is_integer() const { return is_rational() && (terms_.empty() || terms_[0].second.get_den() == 1); }

Rational Scalar::to_rational() const {
    if (!is_rational()) throw InvalidArgument("scalar is not rational: " + str());
    return terms_.empty() ? Rational(0) : terms_[0].second;
}

Rational Scalar::rational_part() const {
    if (!terms_.empty() && terms_[0].first.is_one()) return terms_[0].second;
    return 0;
}

void Scalar::normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first)
            out.back().second += t.second;
        else
            out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second == 0; }), out.end());
    terms_ = std::move(out);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.terms_.empty()) return *this;
    if (is_rational() && o.is_rational()) {
        Rational s = rational_part() + o.rational_part();
        *this = Scalar(s);
        return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            out.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            out.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].second + o.terms_[j].second;
            if (c != 0) out.emplace_back(terms_[i].first, c);
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.terms_.empty() || b.terms_.empty()) return Scalar();
    if (a.is_rational() && b.is_rational()) return Scalar(a.terms_[0].second * b.terms_[0].second);
    Scalar out;
    if (a.is_rational() || b.is_rational()) {
        const Scalar& r = a.is_rational() ? a : b;
        const Scalar& s = a.is_rational() ? b : a;
        out = s;
        for (auto& t : out.terms_) t.second *= r.terms_[0].second;
        return out;
    }
    for (auto& [ra, ca] : a.terms_)
        for (auto& [rb, cb] : b.terms_) {
            Rational c = ca * cb;
            Radical r = radical_mul(ra, rb, c);
            out.terms_.emplace_back(r, c);
        }
    out.normalize();
    return out;
}

Scalar& Scalar::operator*=(const Scalar& o) { return *this = *this * o; }

Scalar& Scalar::operator/=(const Scalar& o) { return *this = *this / o; }

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].first == b.terms_[i].first) || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
}

bool operator<(const Scalar& a, const Scalar& b) {
    std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.terms_[i].first < b.terms_[i].first) return true;
        if (b.terms_[i].first < a.terms_[i].first) return false;
        if (a.terms_[i].second != b.terms_[i].second) return a.terms_[i].second < b.terms_[i].second;
    }
    return a.terms_.size() < b.terms_.size();
}

std::vector<Integer> Scalar::atoms() const {
    std::vector<Integer> out;
    for (auto& [r, c] : terms_) {
        if (r.is_one()) continue;
        auto v = atom_vector(radical_signed(r));
        out.insert(out.end(), v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Scalar Scalar::conj_by_atom(const Integer& atom) const {
    Scalar r = *this;
    for (auto& [rad, c] : r.terms_) {
        bool has = atom == -1 ? rad.imag : mpz_divisible_p(rad.m.get_mpz_t(), atom.get_mpz_t()) != 0;
        if (has) c = -c;
    }
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw InvalidArgument("division by zero");
    if (is_rational()) return Scalar(1 / terms_[0].second);
    if (terms_.size() == 1) {
        // c*sqrt(+-m): inverse is sqrt(+-m) / (c * (+-m)).
        auto [rad, c] = terms_[0];
        Scalar out;
        Rational d = c * Rational(rad.imag ? Integer(-rad.m) : rad.m);
        out.terms_.emplace_back(rad, 1 / d);
        return out;
    }
    Integer atom = atoms().front();
    Scalar conj = conj_by_atom(atom);
    return conj * (*this * conj).inverse();
}

Scalar Scalar::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Scalar result(1), base = *this;
    while (e) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

namespace {

std::optional<Scalar> sqrt_impl(const Scalar& s, bool allow_adjoin, int budget) {
    if (s.is_zero()) return Scalar();
    if (s.is_rational()) {
        Rational q = s.to_rational();
        auto [sf, f] = squarefree_decompose(q.get_num() * q.get_den());
        if (sf != 1) {
            if (!Tower::contains(sf)) {
                if (!allow_adjoin) return std::nullopt;
                Tower::adjoin(sf);
            }
        }
        return Scalar::radical(q);
    }
    if (budget <= 0) return std::nullopt;
    // s = u + w*sqrt(p) with u, w free of the atom p.
    Integer atom = s.atoms().front();
    Scalar root_p = atom == -1 ? Scalar::radical(-1) : Scalar::radical(Rational(atom));
    Scalar pv = atom == -1 ? Scalar(-1) : Scalar(atom);
    Scalar conj = s.conj_by_atom(atom);
    Scalar u = (s + conj) * Scalar::frac(1, 2);
    Scalar w = (s - conj) * Scalar::frac(1, 2) / root_p;
    auto d = sqrt_impl(u * u - pv * w * w, allow_adjoin, budget - 1);
    if (!d) return std::nullopt;
    for (int sign : {1, -1}) {
        Scalar a2 = (u + Scalar(sign) * *d) * Scalar::frac(1, 2);
        if (a2.is_zero()) continue;
        auto a = sqrt_impl(a2, allow_adjoin, budget - 1);
        if (!a || a->is_zero()) continue;
        Scalar b = w / (Scalar(2) * *a);
        Scalar t = *a + b * root_p;
        if (t * t == s) return t;
    }
    return std::nullopt;
}

}  // namespace

Scalar Scalar::sqrt() const {
    auto saved = g_tower.basis;
    auto r = sqrt_impl(*this, true, kDenestBudget);
    if (!r) {
        g_tower.basis = std::move(saved);
        throw Unsupported("square root of " + str() + " needs a nested radical");
    }
    return *r;
}

std::optional<Scalar> Scalar::sqrt_in_tower() const { return sqrt_impl(*this, false, kDenestBudget); }

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    Integer den = 1;
    for (auto& t : terms_) den = lcm(den, Integer(t.second.get_den()));
    std::string num;
    bool first = true;
    for (auto& [rad, c] : terms_) {
        Integer n = c.get_num() * (den / c.get_den());
        bool neg = n < 0;
        Integer a = abs(n);
        std::string body;
        if (rad.is_one()) {
            body = a.get_str();
        } else {
            std::string r = "sqrt(" + std::string(rad.imag ? "-" : "") + rad.m.get_str() + ")";
            body = a == 1 ? r : a.get_str() + "*" + r;
        }
        if (first)
            num = (neg ? "-" : "") + body;
        else
            num += (neg ? "-" : "+") + body;
        first = false;
    }
    if (den == 1) return num;
    if (terms_.size() == 1) return num + "/" + den.get_str();
    return "(" + num + ")/" + den.get_str();
}

double Scalar::approx() const {
    double v = 0;
    for (auto& [rad, c] : terms_)
        if (!rad.imag) v += c.get_d() * std::sqrt(rad.m.get_d());
    return v;
}

}  // namespace rg
