#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rg {

using Rational = mpq_class;
using Integer = mpz_class;

/// Basis element sqrt(m) * (sqrt(-1) if imag) with m a positive square-free integer.
struct Radical {
    Integer m{1};
    bool imag{false};

    bool is_one() const { return m == 1 && !imag; }
    friend bool operator==(const Radical& a, const Radical& b) { return a.imag == b.imag && a.m == b.m; }
    friend bool operator<(const Radical& a, const Radical& b) {
        if (a.imag != b.imag) return !a.imag;
        return a.m < b.m;
    }
};

/// Element of a multi-quadratic field Q(sqrt(d1), ..., sqrt(dk)).
///
/// Stored as a sparse rational combination of the radicals sqrt(m), sqrt(-m),
/// which is a basis of the compositum of all quadratic fields.  The stored
/// form is canonical, so equality is structural.
class Scalar {
public:
    using Term = std::pair<Radical, Rational>;

    Scalar() = default;
    Scalar(int v) : Scalar(Rational(v)) {}
    Scalar(long v) : Scalar(Rational(v)) {}
    Scalar(const Integer& v) : Scalar(Rational(v)) {}
    Scalar(const Rational& q);
    static Scalar frac(long num, long den);
    /// sqrt(m) * c for an arbitrary rational radicand.
    static Scalar radical(const Rational& radicand);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_rational() const;
    bool is_integer() const;
    /// Rational value; throws InvalidArgument if irrational.
    Rational to_rational() const;
    /// Rational part (coefficient of 1).
    Rational rational_part() const;
    const std::vector<Term>& terms() const { return terms_; }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    /// Total order on the representation (not a field order).
    friend bool operator<(const Scalar& a, const Scalar& b);

    Scalar inverse() const;
    Scalar pow(long e) const;

    /// Exact square root; adjoins a radical when allowed by the active tower.
    Scalar sqrt() const;
    /// Square root inside the field already spanned by this value and the tower, if any.
    std::optional<Scalar> sqrt_in_tower() const;

    /// Atoms (primes and -1) appearing in the radicals of this value.
    std::vector<Integer> atoms() const;

    /// Exact text: "3/4", "(1+2*sqrt(5))/3", "-sqrt(-1)".
    std::string str() const;
    /// Real approximation of the real part (diagnostics only).
    double approx() const;

    /// Negates every term whose radical involves the given atom (a prime, or -1).
    Scalar conj_by_atom(const Integer& atom) const;

private:
    std::vector<Term> terms_;
    void normalize();
};

/// Thread-local record of the square roots adjoined during one computation.
class Tower {
public:
    static int depth_limit();
    static void set_depth_limit(int depth);
    /// Number of independent radicands adjoined so far.
    static int depth();
    /// Registers the radicand (signed square-free integer); throws Unsupported past the limit.
    static void adjoin(const Integer& squarefree_signed);
    static bool contains(const Integer& squarefree_signed);
    /// Registers every radical occurring in s.
    static void absorb(const Scalar& s);
    static std::vector<Integer> radicands();
};

/// RAII scope that starts a fresh tower and restores the previous one on exit.
class TowerScope {
public:
    explicit TowerScope(int depth_limit = Tower::depth_limit());
    ~TowerScope();
    TowerScope(const TowerScope&) = delete;
    TowerScope& operator=(const TowerScope&) = delete;

private:
    int saved_limit_;
    std::vector<std::vector<Integer>> saved_basis_;
};

/// Signed square-free part s and square root f of |n|/|s| so that n = s * f^2.
std::pair<Integer, Integer> squarefree_decompose(const Integer& n);

}  // namespace rg
