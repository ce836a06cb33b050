#pragma once

#include "kdvlab/polynomial.hpp"

#include <string>
#include <vector>

namespace kdvlab {

// Dense univariate polynomial with exact rational coefficients, used by the
// elimination certificates: resultants, gcds and Sturm root counts.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeff) : c_(std::move(coeff)) { trim(); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return c_; }
    Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational evaluate(const Rational& x) const;
    double evaluate(double x) const;
    UPoly derivative() const;
    UPoly scaled(const Rational& s) const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    // Exact remainder of this by d (rational long division).
    UPoly remainder(const UPoly& d) const;

    // Content 1, positive leading coefficient.
    UPoly normalized() const;

    // Strips the x^k factor (roots at zero are outside (0,inf) anyway).
    UPoly without_zero_roots() const;

    std::string to_string(const std::string& var) const;

private:
    void trim();
    std::vector<Rational> c_; // c_[k] multiplies x^k
};

UPoly upoly_gcd(UPoly a, UPoly b);
UPoly squarefree_part(const UPoly& p);

// Number of distinct real roots in (0, +inf), exact (Sturm chain).
int count_positive_roots(const UPoly& p);

// All real roots in (0, hi), isolated by Sturm bisection and polished
// numerically. `p` need not be squarefree.
std::vector<double> positive_roots(const UPoly& p, double hi);

// Resultant of f and g with respect to `elim`, expressed in `keep`. Both
// inputs must involve no symbols other than elim and keep. Computed by
// evaluation at rational nodes (skipping those that drop the leading degree)
// and Lagrange interpolation.
UPoly resultant(const Poly& f, const Poly& g, Sym elim, Sym keep);

} // namespace kdvlab
