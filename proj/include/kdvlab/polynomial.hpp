#pragma once

#include "kdvlab/rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kdvlab {

// Polynomial symbols. `RootM` is the formal square root of the elliptic
// parameter: RootM^2 folds to ModulusM during monomial normalization, which
// keeps expressions containing sqrt(m) inside the polynomial ring.
enum Sym : int {
    SymAlpha = 0,   // nonlinearity parameter
    SymBeta = 1,    // dispersion parameter
    SymA = 2,       // amplitude
    SymB = 3,       // inverse width
    SymV = 4,       // velocity
    SymD = 5,       // vertical offset
    SymM = 6,       // elliptic parameter
    SymS = 7,       // formal sqrt(m), s^2 = m
};
inline constexpr int kSymCount = 8;
extern const char* const kSymNames[kSymCount];
std::optional<Sym> sym_from_name(const std::string& name);

struct Monomial {
    std::array<int8_t, kSymCount> e{};

    // Folds s^2 -> m so every stored monomial has s-exponent 0 or 1.
    void normalize() {
        if (e[SymS] >= 2) {
            e[SymM] = static_cast<int8_t>(e[SymM] + e[SymS] / 2);
            e[SymS] = static_cast<int8_t>(e[SymS] % 2);
        }
    }
    int degree() const {
        int d = 0;
        for (int v : e) d += v;
        return d;
    }
    bool divides(const Monomial& other) const {
        for (int i = 0; i < kSymCount; ++i)
            if (e[i] > other.e[i]) return false;
        return true;
    }
    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kSymCount; ++i) r.e[i] = static_cast<int8_t>(a.e[i] + b.e[i]);
        r.normalize();
        return r;
    }
    // Componentwise quotient; caller must ensure divisibility.
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r;
        for (int i = 0; i < kSymCount; ++i) r.e[i] = static_cast<int8_t>(a.e[i] - b.e[i]);
        return r;
    }
    auto operator<=>(const Monomial&) const = default;
    std::string to_string() const;
};

// Graded lexicographic order used for leading terms and reductions.
bool grlex_less(const Monomial& a, const Monomial& b);

// Multivariate polynomial over Sym with exact rational coefficients.
// Invariants: no zero coefficients are stored; terms are keyed by canonical
// (s-folded) monomials, so equality is structural.
class Poly {
public:
    using TermMap = std::map<Monomial, Rational>;

    Poly() = default;
    explicit Poly(const Rational& c) {
        if (c != 0) terms_[Monomial{}] = c;
    }
    static Poly constant(long num, long den = 1) { return Poly(rat(num, den)); }
    static Poly symbol(Sym s, int exp = 1);
    static Poly monomial(const Monomial& m, const Rational& c);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
    }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { a += b; return a; }
    friend Poly operator-(Poly a, const Poly& b) { a -= b; return a; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

    Poly scaled(const Rational& c) const;
    Poly derivative(Sym s) const;
    int degree(Sym s) const;
    int total_degree() const;

    // Leading term w.r.t. graded lex order; polynomial must be nonzero.
    std::pair<Monomial, Rational> leading_term_grlex() const;

    // GCD of all coefficients (positive) and the componentwise-min monomial.
    Rational content() const;
    Monomial monomial_gcd() const;

    // Exact quotient if `divisor` divides this polynomial, nullopt otherwise.
    std::optional<Poly> divide_exact(const Poly& divisor) const;

    // Remainder of multivariate division by `divisors` (grlex leading terms,
    // divisors tried in order). Used to drop redundant conditions.
    Poly normal_form(const std::vector<Poly>& divisors) const;

    // View as a univariate polynomial in `s`: coefficient polys by exponent.
    std::vector<Poly> coefficients_in(Sym s) const;

    double evaluate(const std::array<double, kSymCount>& vals) const;
    Rational evaluate_rational(const std::array<Rational, kSymCount>& vals) const;

    std::string to_string() const;

private:
    void insert(const Monomial& m, const Rational& c);
    TermMap terms_;
};

// True when a = (p/q) * b for some nonzero rational p/q.
bool rationally_proportional(const Poly& a, const Poly& b);

// Divides by content and fixes the sign of the grlex leading coefficient.
Poly normalized(const Poly& p);

// Normal form used when comparing condition polynomials: repeatedly strips
// factors that cannot vanish on the admissible domain (powers of alpha, beta,
// A, B, m, s and of the polynomial 1-m), then content/sign-normalizes.
Poly domain_stripped(const Poly& p);

} // namespace kdvlab
