#include "kdvlab/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <sstream>

namespace kdvlab {

const char* const kSymNames[kSymCount] = {"alpha", "beta", "A", "B", "v", "D", "m", "s"};

std::optional<Sym> sym_from_name(const std::string& name) {
    for (int i = 0; i < kSymCount; ++i)
        if (name == kSymNames[i]) return static_cast<Sym>(i);
    return std::nullopt;
}

std::string Monomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < kSymCount; ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << kSymNames[i];
        if (e[i] != 1) os << "^" << int(e[i]);
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

bool grlex_less(const Monomial& a, const Monomial& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.e < b.e;
}

Poly Poly::symbol(Sym s, int exp) {
    Monomial m;
    m.e[s] = static_cast<int8_t>(exp);
    m.normalize();
    return monomial(m, 1);
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
    Poly p;
    if (c != 0) {
        Monomial mm = m;
        mm.normalize();
        p.terms_[mm] = c;
    }
    return p;
}

void Poly::insert(const Monomial& m, const Rational& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) insert(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) insert(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.insert(ma * mb, ca * cb);
    return r;
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r;
    if (c == 0) return r;
    for (const auto& [m, cc] : terms_) r.terms_[m] = cc * c;
    return r;
}

Poly Poly::derivative(Sym s) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        if (m.e[s] == 0) continue;
        Monomial d = m;
        d.e[s] = static_cast<int8_t>(d.e[s] - 1);
        r.insert(d, c * m.e[s]);
    }
    return r;
}

int Poly::degree(Sym s) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, int(m.e[s]));
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

std::pair<Monomial, Rational> Poly::leading_term_grlex() const {
    assert(!terms_.empty());
    auto lead = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        if (grlex_less(lead->first, it->first)) lead = it;
    return {lead->first, lead->second};
}

Rational Poly::content() const {
    Rational g = 0;
    for (const auto& [m, c] : terms_) g = rational_gcd(g, c);
    return g;
}

Monomial Poly::monomial_gcd() const {
    if (terms_.empty()) return Monomial{};
    Monomial g = terms_.begin()->first;
    for (const auto& [m, c] : terms_)
        for (int i = 0; i < kSymCount; ++i) g.e[i] = std::min(g.e[i], m.e[i]);
    return g;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
    if (divisor.is_zero()) return std::nullopt;
    Poly rem = *this;
    Poly quot;
    auto [dlm, dlc] = divisor.leading_term_grlex();
    while (!rem.is_zero()) {
        auto [rlm, rlc] = rem.leading_term_grlex();
        if (!dlm.divides(rlm)) return std::nullopt;
        Poly t = Poly::monomial(rlm / dlm, rlc / dlc);
        quot += t;
        rem -= t * divisor;
    }
    return quot;
}

Poly Poly::normal_form(const std::vector<Poly>& divisors) const {
    Poly rem;
    Poly work = *this;
    while (!work.is_zero()) {
        auto [lm, lc] = work.leading_term_grlex();
        bool reduced = false;
        for (const Poly& d : divisors) {
            if (d.is_zero()) continue;
            auto [dlm, dlc] = d.leading_term_grlex();
            if (dlm.divides(lm)) {
                work -= d * Poly::monomial(lm / dlm, lc / dlc);
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            Poly t = Poly::monomial(lm, lc);
            rem += t;
            work -= t;
        }
    }
    return rem;
}

std::vector<Poly> Poly::coefficients_in(Sym s) const {
    std::vector<Poly> out(static_cast<std::size_t>(degree(s)) + 1);
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        int k = rest.e[s];
        rest.e[s] = 0;
        out[static_cast<std::size_t>(k)] += Poly::monomial(rest, c);
    }
    return out;
}

double Poly::evaluate(const std::array<double, kSymCount>& vals) const {
    double sum = 0.0;
    for (const auto& [m, c] : terms_) {
        double t = to_double(c);
        for (int i = 0; i < kSymCount; ++i)
            for (int k = 0; k < m.e[i]; ++k) t *= vals[i];
        sum += t;
    }
    return sum;
}

Rational Poly::evaluate_rational(const std::array<Rational, kSymCount>& vals) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < kSymCount; ++i)
            for (int k = 0; k < m.e[i]; ++k) t *= vals[i];
        sum += t;
    }
    return sum;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rational a = abs(c);
        bool unit = (a == 1) && !(m == Monomial{});
        if (!unit) os << a.get_str();
        if (!(m == Monomial{})) {
            if (!unit) os << "*";
            os << m.to_string();
        }
        first = false;
    }
    return os.str();
}

bool rationally_proportional(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    auto la = a.leading_term_grlex();
    auto lb = b.leading_term_grlex();
    return a.scaled(lb.second) == b.scaled(la.second);
}

Poly normalized(const Poly& p) {
    if (p.is_zero()) return p;
    Rational c = p.content();
    Poly r = p.scaled(1 / c);
    if (r.leading_term_grlex().second < 0) r = -r;
    return r;
}

Poly domain_stripped(const Poly& p) {
    if (p.is_zero()) return p;
    Poly r = p;
    // Monomial factors in symbols that are nonzero on the admissible domain
    // (alpha, beta > 0; A, B != 0; m, s in (0,1)). v and D may vanish.
    Monomial g = r.monomial_gcd();
    g.e[SymV] = 0;
    g.e[SymD] = 0;
    if (!(g == Monomial{})) {
        Poly::TermMap stripped;
        Poly out;
        for (const auto& [m, c] : r.terms()) out += Poly::monomial(m / g, c);
        r = out;
    }
    // Polynomial factor 1-m is nonzero for m in (0,1).
    Poly one_minus_m = Poly::constant(1) - Poly::symbol(SymM);
    for (;;) {
        auto q = r.divide_exact(one_minus_m);
        if (!q) break;
        r = *q;
    }
    return normalized(r);
}

} // namespace kdvlab
