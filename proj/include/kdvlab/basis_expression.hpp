#pragma once

#include "kdvlab/polynomial.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kdvlab {

enum class BasisFamily { hyperbolic, elliptic };

// One canonical basis function: sech^a * tanh^b (hyperbolic) or
// cn^a * sn^b * dn^c (elliptic). Canonical form keeps b, c <= 1; higher
// powers are rewritten with tanh^2 = 1 - sech^2, sn^2 = 1 - cn^2 and
// dn^2 = (1-m) + m*cn^2 during normalization.
struct BasisMonomial {
    int8_t a = 0; // sech | cn power
    int8_t b = 0; // tanh | sn power
    int8_t c = 0; // dn power (elliptic only)

    auto operator<=>(const BasisMonomial&) const = default;
    int degree() const { return a + b + c; }
    std::string to_string(BasisFamily fam) const;
};

// Finite linear combination of canonical basis monomials with polynomial
// coefficients. Closed under multiplication and d/dy (with chain factor B),
// which is what makes the ansatz substitution terminate on a finite basis.
class BasisExpression {
public:
    using TermMap = std::map<BasisMonomial, Poly>;

    explicit BasisExpression(BasisFamily fam) : family_(fam) {}
    static BasisExpression zero(BasisFamily fam) { return BasisExpression(fam); }
    static BasisExpression term(BasisFamily fam, BasisMonomial mono, Poly coeff);

    BasisFamily family() const { return family_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    BasisExpression& operator+=(const BasisExpression& o);
    friend BasisExpression operator+(BasisExpression a, const BasisExpression& b) {
        a += b;
        return a;
    }
    friend BasisExpression operator*(const BasisExpression& a, const BasisExpression& b);
    BasisExpression scaled(const Poly& p) const;
    friend bool operator==(const BasisExpression& a, const BasisExpression& b) {
        return a.family_ == b.family_ && a.terms_ == b.terms_;
    }

    // d/dy assuming every basis function has argument B*y; the chain factor B
    // is attached symbolically.
    BasisExpression differentiate() const;

    // Nonzero coefficients by canonical monomial, ascending (degree, a, b, c).
    std::vector<std::pair<BasisMonomial, Poly>> collect() const;

    // Numeric value at basis argument u, with all symbols assigned. The s
    // slot is overwritten with sqrt(m) for elliptic evaluation.
    double evaluate(double u, std::array<double, kSymCount> vals) const;

private:
    void add_reduced(BasisMonomial mono, const Poly& coeff);
    BasisFamily family_;
    TermMap terms_;
};

void require_same_family(const BasisExpression& a, const BasisExpression& b);

} // namespace kdvlab
