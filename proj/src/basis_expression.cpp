#include "kdvlab/basis_expression.hpp"
#include "kdvlab/special_functions.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kdvlab {

std::string BasisMonomial::to_string(BasisFamily fam) const {
    const char* n1 = fam == BasisFamily::hyperbolic ? "sech" : "cn";
    const char* n2 = fam == BasisFamily::hyperbolic ? "tanh" : "sn";
    std::ostringstream os;
    bool first = true;
    auto put = [&](const char* name, int p) {
        if (p == 0) return;
        if (!first) os << "*";
        os << name;
        if (p != 1) os << "^" << p;
        first = false;
    };
    put(n1, a);
    put(n2, b);
    put("dn", c);
    if (first) os << "1";
    return os.str();
}

void require_same_family(const BasisExpression& a, const BasisExpression& b) {
    if (a.family() != b.family())
        throw std::invalid_argument("basis family mismatch");
}

BasisExpression BasisExpression::term(BasisFamily fam, BasisMonomial mono, Poly coeff) {
    BasisExpression e(fam);
    e.add_reduced(mono, coeff);
    return e;
}

// Rewrites b,c powers above 1 into the canonical basis and accumulates.
void BasisExpression::add_reduced(BasisMonomial mono, const Poly& coeff) {
    if (coeff.is_zero()) return;
    if (mono.b >= 2) {
        BasisMonomial lower = mono;
        lower.b = static_cast<int8_t>(lower.b - 2);
        if (family_ == BasisFamily::hyperbolic) {
            // tanh^2 = 1 - sech^2
            add_reduced(lower, coeff);
            BasisMonomial hi = lower;
            hi.a = static_cast<int8_t>(hi.a + 2);
            add_reduced(hi, -coeff);
        } else {
            // sn^2 = 1 - cn^2
            add_reduced(lower, coeff);
            BasisMonomial hi = lower;
            hi.a = static_cast<int8_t>(hi.a + 2);
            add_reduced(hi, -coeff);
        }
        return;
    }
    if (mono.c >= 2) {
        if (family_ == BasisFamily::hyperbolic)
            throw std::invalid_argument("dn power in hyperbolic expression");
        // dn^2 = (1-m) + m*cn^2
        BasisMonomial lower = mono;
        lower.c = static_cast<int8_t>(lower.c - 2);
        Poly one_minus_m = Poly::constant(1) - Poly::symbol(SymM);
        add_reduced(lower, coeff * one_minus_m);
        BasisMonomial hi = lower;
        hi.a = static_cast<int8_t>(hi.a + 2);
        add_reduced(hi, coeff * Poly::symbol(SymM));
        return;
    }
    auto it = terms_.find(mono);
    if (it == terms_.end()) {
        terms_.emplace(mono, coeff);
    } else {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BasisExpression& BasisExpression::operator+=(const BasisExpression& o) {
    require_same_family(*this, o);
    for (const auto& [m, c] : o.terms_) add_reduced(m, c);
    return *this;
}

BasisExpression operator*(const BasisExpression& a, const BasisExpression& b) {
    require_same_family(a, b);
    BasisExpression r(a.family());
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            BasisMonomial m{static_cast<int8_t>(ma.a + mb.a),
                            static_cast<int8_t>(ma.b + mb.b),
                            static_cast<int8_t>(ma.c + mb.c)};
            r.add_reduced(m, ca * cb);
        }
    return r;
}

BasisExpression BasisExpression::scaled(const Poly& p) const {
    BasisExpression r(family_);
    if (p.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.add_reduced(m, c * p);
    return r;
}

BasisExpression BasisExpression::differentiate() const {
    // sech' = -sech*tanh, tanh' = sech^2;
    // cn' = -sn*dn, sn' = cn*dn, dn' = -m*sn*cn; all times B.
    BasisExpression r(family_);
    Poly B = Poly::symbol(SymB);
    for (const auto& [m, c] : terms_) {
        Poly cb = c * B;
        if (m.a > 0) {
            BasisMonomial d = m;
            if (family_ == BasisFamily::hyperbolic) {
                d.b = static_cast<int8_t>(d.b + 1);
                r.add_reduced(d, cb.scaled(-m.a));
            } else {
                d.a = static_cast<int8_t>(d.a - 1);
                d.b = static_cast<int8_t>(d.b + 1);
                d.c = static_cast<int8_t>(d.c + 1);
                r.add_reduced(d, cb.scaled(-m.a));
            }
        }
        if (m.b > 0) {
            BasisMonomial d = m;
            if (family_ == BasisFamily::hyperbolic) {
                d.b = static_cast<int8_t>(d.b - 1);
                d.a = static_cast<int8_t>(d.a + 2);
                r.add_reduced(d, cb.scaled(m.b));
            } else {
                d.b = static_cast<int8_t>(d.b - 1);
                d.a = static_cast<int8_t>(d.a + 1);
                d.c = static_cast<int8_t>(d.c + 1);
                r.add_reduced(d, cb.scaled(m.b));
            }
        }
        if (m.c > 0) {
            BasisMonomial d = m;
            d.c = static_cast<int8_t>(d.c - 1);
            d.b = static_cast<int8_t>(d.b + 1);
            d.a = static_cast<int8_t>(d.a + 1);
            r.add_reduced(d, (cb * Poly::symbol(SymM)).scaled(-m.c));
        }
    }
    return r;
}

std::vector<std::pair<BasisMonomial, Poly>> BasisExpression::collect() const {
    std::vector<std::pair<BasisMonomial, Poly>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        return x.first < y.first;
    });
    return out;
}

double BasisExpression::evaluate(double u, std::array<double, kSymCount> vals) const {
    double f1, f2, f3 = 1.0;
    if (family_ == BasisFamily::hyperbolic) {
        f1 = sech(u);
        f2 = std::tanh(u);
    } else {
        JacobiTriple j = jacobi_cn_sn_dn(u, vals[SymM]);
        f1 = j.cn;
        f2 = j.sn;
        f3 = j.dn;
        vals[SymS] = std::sqrt(vals[SymM]);
    }
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = c.evaluate(vals);
        for (int k = 0; k < m.a; ++k) t *= f1;
        for (int k = 0; k < m.b; ++k) t *= f2;
        for (int k = 0; k < m.c; ++k) t *= f3;
        sum += t;
    }
    return sum;
}

} // namespace kdvlab
