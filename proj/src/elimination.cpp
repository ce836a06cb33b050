#include "kdvlab/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kdvlab {

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::evaluate(const Rational& x) const {
    Rational r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
}

double UPoly::evaluate(double x) const {
    double r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + to_double(*it);
    return r;
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly{};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<long>(k);
    return UPoly(std::move(d));
}

UPoly UPoly::scaled(const Rational& s) const {
    if (s == 0) return UPoly{};
    std::vector<Rational> d = c_;
    for (auto& x : d) x *= s;
    return UPoly(std::move(d));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> d(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) d[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) d[k] += b.c_[k];
    return UPoly(std::move(d));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    return a + b.scaled(-1);
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly{};
    std::vector<Rational> d(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(d));
}

UPoly UPoly::remainder(const UPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("polynomial division by zero");
    std::vector<Rational> r = c_;
    int dd = d.degree();
    Rational lead = d.c_.back();
    while (static_cast<int>(r.size()) - 1 >= dd) {
        Rational f = r.back() / lead;
        std::size_t shift = r.size() - 1 - static_cast<std::size_t>(dd);
        for (std::size_t k = 0; k < d.c_.size(); ++k) r[shift + k] -= f * d.c_[k];
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) break;
    }
    return UPoly(std::move(r));
}

UPoly UPoly::normalized() const {
    if (is_zero()) return *this;
    Rational g = 0;
    for (const auto& x : c_) g = rational_gcd(g, x);
    UPoly r = scaled(1 / g);
    if (r.leading() < 0) r = r.scaled(-1);
    return r;
}

UPoly UPoly::without_zero_roots() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return UPoly(std::vector<Rational>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
}

std::string UPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0) continue;
        Rational a = abs(c_[k]);
        if (first) {
            if (c_[k] < 0) os << "-";
        } else {
            os << (c_[k] < 0 ? " - " : " + ");
        }
        os << a.get_str();
        if (k > 0) os << "*" << var;
        if (k > 1) os << "^" << k;
        first = false;
    }
    return os.str();
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    a = a.normalized();
    b = b.normalized();
    while (!b.is_zero()) {
        UPoly r = a.remainder(b).normalized();
        a = b;
        b = r;
    }
    return a.normalized();
}

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 1) return p.normalized();
    UPoly g = upoly_gcd(p, p.derivative());
    if (g.degree() == 0) return p.normalized();
    // exact division p / g
    std::vector<Rational> r = p.coefficients();
    std::vector<Rational> q(r.size() - g.coefficients().size() + 1, Rational(0));
    const auto& gc = g.coefficients();
    for (std::size_t k = q.size(); k-- > 0;) {
        Rational f = r[k + gc.size() - 1] / gc.back();
        q[k] = f;
        for (std::size_t j = 0; j < gc.size(); ++j) r[k + j] -= f * gc[j];
    }
    return UPoly(std::move(q)).normalized();
}

namespace {

std::vector<UPoly> sturm_chain(const UPoly& p) {
    std::vector<UPoly> chain;
    chain.push_back(p.normalized());
    chain.push_back(p.derivative().normalized());
    while (!chain.back().is_zero()) {
        UPoly r = chain[chain.size() - 2].remainder(chain.back());
        chain.push_back(r.scaled(-1).normalized());
    }
    chain.pop_back();
    return chain;
}

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int variations_at(const std::vector<UPoly>& chain, const Rational& x) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        int s = sign_of(p.evaluate(x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
    }
    return var;
}

int variations_at_infinity(const std::vector<UPoly>& chain) {
    int var = 0, prev = 0;
    for (const auto& p : chain) {
        if (p.is_zero()) continue;
        int s = sign_of(p.leading());
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

// Distinct roots of a squarefree p in the half-open interval (lo, hi].
int sturm_count(const std::vector<UPoly>& chain, const Rational& lo, const Rational& hi) {
    return variations_at(chain, lo) - variations_at(chain, hi);
}

Rational cauchy_bound(const UPoly& p) {
    Rational lead = abs(p.leading());
    Rational maxc = 0;
    for (const auto& c : p.coefficients()) { Rational a = abs(c); if (a > maxc) maxc = a; }
    return 1 + maxc / lead;
}

} // namespace

int count_positive_roots(const UPoly& p) {
    if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
    UPoly sf = squarefree_part(p.without_zero_roots());
    if (sf.degree() <= 0) return 0;
    auto chain = sturm_chain(sf);
    return variations_at(chain, Rational(0)) - variations_at_infinity(chain);
}

std::vector<double> positive_roots(const UPoly& p, double hi) {
    std::vector<double> out;
    UPoly sf = squarefree_part(p.without_zero_roots());
    if (sf.degree() <= 0) return out;
    auto chain = sturm_chain(sf);
    Rational bound = cauchy_bound(sf);
    Rational cap(static_cast<long>(std::ceil(hi)));
    if (cap < bound) bound = cap;

    struct Iv {
        Rational lo, hi;
        int n;
    };
    std::vector<Iv> stack{{Rational(0), bound, sturm_count(chain, Rational(0), bound)}};
    std::vector<std::pair<Rational, Rational>> isolated;
    while (!stack.empty()) {
        Iv iv = stack.back();
        stack.pop_back();
        if (iv.n == 0) continue;
        if (iv.n == 1 && (iv.hi - iv.lo) < rat(1, 1024)) {
            isolated.emplace_back(iv.lo, iv.hi);
            continue;
        }
        Rational mid = (iv.lo + iv.hi) / 2;
        int left = sturm_count(chain, iv.lo, mid);
        stack.push_back({iv.lo, mid, left});
        stack.push_back({mid, iv.hi, iv.n - left});
    }
    std::sort(isolated.begin(), isolated.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [lo, hi_r] : isolated) {
        double a = to_double(lo), b = to_double(hi_r);
        double fa = sf.evaluate(a);
        for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
            double mid = 0.5 * (a + b);
            double fm = sf.evaluate(mid);
            if ((fa <= 0) == (fm <= 0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        double r = 0.5 * (a + b);
        if (r > 0 && r <= hi) out.push_back(r);
    }
    return out;
}

namespace {

// Sylvester-matrix determinant over the rationals (exact Gauss).
Rational sylvester_resultant(const std::vector<Rational>& f, const std::vector<Rational>& g) {
    int df = static_cast<int>(f.size()) - 1;
    int dg = static_cast<int>(g.size()) - 1;
    int n = df + dg;
    if (n == 0) return Rational(1);
    std::vector<std::vector<Rational>> M(static_cast<std::size_t>(n),
                                         std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int r = 0; r < dg; ++r)
        for (int k = 0; k <= df; ++k)
            M[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
                f[static_cast<std::size_t>(df - k)];
    for (int r = 0; r < df; ++r)
        for (int k = 0; k <= dg; ++k)
            M[static_cast<std::size_t>(dg + r)][static_cast<std::size_t>(r + k)] =
                g[static_cast<std::size_t>(dg - k)];
    Rational det = 1;
    for (int col = 0; col < n; ++col) {
        auto ucol = static_cast<std::size_t>(col);
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (M[static_cast<std::size_t>(r)][ucol] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            std::swap(M[static_cast<std::size_t>(piv)], M[ucol]);
            det = -det;
        }
        det *= M[ucol][ucol];
        Rational inv = 1 / M[ucol][ucol];
        for (int r = col + 1; r < n; ++r) {
            auto ur = static_cast<std::size_t>(r);
            if (M[ur][ucol] == 0) continue;
            Rational fmul = M[ur][ucol] * inv;
            for (int c = col; c < n; ++c)
                M[ur][static_cast<std::size_t>(c)] -= fmul * M[ucol][static_cast<std::size_t>(c)];
        }
    }
    return det;
}

std::vector<Rational> lagrange_interpolate(const std::vector<Rational>& xs,
                                           const std::vector<Rational>& ys) {
    std::size_t n = xs.size();
    std::vector<Rational> acc(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        std::vector<Rational> basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            basis.push_back(0);
            for (std::size_t k = basis.size() - 1; k > 0; --k)
                basis[k] = basis[k - 1] - xs[j] * basis[k];
            basis[0] = -xs[j] * basis[0];
            denom *= xs[i] - xs[j];
        }
        Rational w = ys[i] / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) acc[k] += w * basis[k];
    }
    return acc;
}

} // namespace

UPoly resultant(const Poly& f, const Poly& g, Sym elim, Sym keep) {
    for (const auto& [mono, c] : f.terms())
        for (int i = 0; i < kSymCount; ++i)
            if (mono.e[i] != 0 && i != elim && i != keep)
                throw std::invalid_argument("resultant: extra symbol in f");
    for (const auto& [mono, c] : g.terms())
        for (int i = 0; i < kSymCount; ++i)
            if (mono.e[i] != 0 && i != elim && i != keep)
                throw std::invalid_argument("resultant: extra symbol in g");

    auto fc = f.coefficients_in(elim);
    auto gc = g.coefficients_in(elim);
    int df = static_cast<int>(fc.size()) - 1;
    int dg = static_cast<int>(gc.size()) - 1;
    int dfk = f.degree(keep), dgk = g.degree(keep);
    int dout = df * dgk + dg * dfk; // degree bound for the result

    auto upoly_of = [&](const Poly& p) {
        std::vector<Rational> c(static_cast<std::size_t>(p.degree(keep)) + 1, Rational(0));
        for (const auto& [mono, coef] : p.terms())
            c[static_cast<std::size_t>(mono.e[keep])] += coef;
        return UPoly(std::move(c));
    };
    std::vector<UPoly> fu, gu;
    fu.reserve(fc.size());
    for (const auto& p : fc) fu.push_back(upoly_of(p));
    gu.reserve(gc.size());
    for (const auto& p : gc) gu.push_back(upoly_of(p));

    std::vector<Rational> xs, ys;
    long t = 1;
    while (static_cast<int>(xs.size()) < dout + 1 && t <= 8 * (dout + 2)) {
        Rational x(t++);
        if (fu.back().evaluate(x) == 0 || gu.back().evaluate(x) == 0) continue; // degree drop
        std::vector<Rational> fv(fu.size()), gv(gu.size());
        for (std::size_t k = 0; k < fu.size(); ++k) fv[k] = fu[k].evaluate(x);
        for (std::size_t k = 0; k < gu.size(); ++k) gv[k] = gu[k].evaluate(x);
        xs.push_back(x);
        ys.push_back(sylvester_resultant(fv, gv));
    }
    if (static_cast<int>(xs.size()) < dout + 1)
        throw std::runtime_error("resultant: not enough regular evaluation nodes");
    return UPoly(lagrange_interpolate(xs, ys));
}

} // namespace kdvlab
