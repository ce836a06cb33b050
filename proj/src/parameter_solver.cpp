#include "kdvlab/parameter_solver.hpp"
#include "kdvlab/elimination.hpp"
#include "kdvlab/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace kdvlab {

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::family_parameter: return "kdv_family";
        case Branch::root_z1: return "z1";
        case Branch::root_z2: return "z2";
    }
    return "?";
}

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::family: return "family";
        case VerdictKind::discrete: return "discrete";
        case VerdictKind::inconsistent: return "inconsistent";
    }
    return "?";
}

std::pair<double, double> order2_z_roots() {
    double s = std::sqrt(2305.0);
    return {(43.0 - s) / 152.0, (43.0 + s) / 152.0};
}

namespace {

constexpr double kMClampLo = 1e-12;
constexpr double kMClampHi = 1.0 - 1e-12;

const ConditionSystem& cached_system(AnsatzFamily f, int order) {
    static std::map<std::pair<int, int>, ConditionSystem> cache;
    auto key = std::make_pair(static_cast<int>(f), order);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, derive_conditions(f, order)).first;
    return it->second;
}

// Conditions are scale-free: alpha pairs with A and D, beta with B^2. The
// compiled form evaluates in p = alpha*A, q = beta*B^2, d = alpha*D directly,
// so one solve covers every alpha, beta > 0.
struct CompiledTerm {
    double coeff;
    int ep, eq, ed, ev, em;
    int es; // 0 or 1, factor sqrt(m)
};

struct CompiledCondition {
    std::vector<CompiledTerm> terms;

    double value(double p, double q, double d, double v, double m) const {
        double sum = 0;
        for (const auto& t : terms) sum += term_value(t, p, q, d, v, m);
        return sum;
    }
    // |value| scaled by the sum of term magnitudes (scale-free residual).
    double normalized(double p, double q, double d, double v, double m) const {
        double sum = 0, mag = 0;
        for (const auto& t : terms) {
            double x = term_value(t, p, q, d, v, m);
            sum += x;
            mag += std::abs(x);
        }
        return mag > 0 ? sum / mag : 0.0;
    }
    std::array<double, 4> gradient(double p, double q, double d, double v, double m) const {
        std::array<double, 4> g{0, 0, 0, 0}; // d/dp, d/dq, d/dv, d/dd
        for (const auto& t : terms) {
            double base = t.coeff * std::pow(m, t.em) * (t.es ? std::sqrt(m) : 1.0);
            double fp = ipow(p, t.ep), fq = ipow(q, t.eq), fd = ipow(d, t.ed), fv = ipow(v, t.ev);
            if (t.ep > 0) g[0] += base * t.ep * ipow(p, t.ep - 1) * fq * fd * fv;
            if (t.eq > 0) g[1] += base * fp * t.eq * ipow(q, t.eq - 1) * fd * fv;
            if (t.ev > 0) g[2] += base * fp * fq * fd * t.ev * ipow(v, t.ev - 1);
            if (t.ed > 0) g[3] += base * fp * fq * t.ed * ipow(d, t.ed - 1) * fv;
        }
        return g;
    }

private:
    static double ipow(double x, int n) {
        double r = 1;
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    }
    static double term_value(const CompiledTerm& t, double p, double q, double d, double v,
                             double m) {
        double x = t.coeff;
        x *= ipow(p, t.ep) * ipow(q, t.eq) * ipow(d, t.ed) * ipow(v, t.ev) * ipow(m, t.em);
        if (t.es) x *= std::sqrt(m);
        return x;
    }
};

struct ReducedSystem {
    AnsatzFamily family;
    int order;
    bool elliptic;
    std::vector<CompiledCondition> conds;
};

ReducedSystem compile(const ConditionSystem& sys) {
    ReducedSystem r{sys.family, sys.order, is_elliptic(sys.family), {}};
    for (const Poly& c : sys.conditions) {
        CompiledCondition cc;
        for (const auto& [mono, coef] : c.terms()) {
            if (mono.e[SymAlpha] != mono.e[SymA] + mono.e[SymD] ||
                mono.e[SymB] != 2 * mono.e[SymBeta])
                throw std::logic_error("condition is not scale-free in (alpha*A, beta*B^2)");
            CompiledTerm t;
            t.coeff = to_double(coef);
            t.ep = mono.e[SymA];
            t.ed = mono.e[SymD];
            t.eq = mono.e[SymBeta];
            t.ev = mono.e[SymV];
            t.em = mono.e[SymM];
            t.es = mono.e[SymS];
            cc.terms.push_back(t);
        }
        r.conds.push_back(std::move(cc));
    }
    return r;
}

// ---- damped Newton on the reduced system -------------------------------

bool gauss_solve(std::vector<std::vector<double>>& A, std::vector<double>& b) {
    std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        if (std::abs(A[piv][c]) < 1e-300) return false;
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t r = n; r-- > 0;) {
        for (std::size_t k = r + 1; k < n; ++k) b[r] -= A[r][k] * b[k];
        b[r] /= A[r][r];
    }
    return true;
}

struct NewtonResult {
    bool converged = false;
    double p = 0, q = 0, v = 0, d = 0;
};

// Unknowns: (p, q, v) plus d for elliptic families, where d is tied to p by
// the volume rule d = p * offset_factor(m); the rule enters as an extra row.
NewtonResult newton_solve(const ReducedSystem& rs, double m, double p0, double q0, double v0,
                          double tol, int max_iter = 100) {
    const bool ell = rs.elliptic;
    const std::size_t n = ell ? 4 : 3;
    double gfac = ell ? volume_offset_factor(rs.family, m) : 0.0;
    std::vector<double> x{p0, q0, v0};
    if (ell) x.push_back(p0 * gfac);

    auto eval = [&](const std::vector<double>& y, std::vector<double>& F) {
        F.clear();
        double d = ell ? y[3] : 0.0;
        for (const auto& c : rs.conds) F.push_back(c.value(y[0], y[1], d, y[2], m));
        if (ell) F.push_back(y[3] - y[0] * gfac);
    };
    auto max_normalized = [&](const std::vector<double>& y) {
        double d = ell ? y[3] : 0.0;
        double worst = 0;
        for (const auto& c : rs.conds)
            worst = std::max(worst, std::abs(c.normalized(y[0], y[1], d, y[2], m)));
        if (ell) {
            double denom = std::abs(y[3]) + std::abs(y[0] * gfac) + 1e-30;
            worst = std::max(worst, std::abs(y[3] - y[0] * gfac) / denom);
        }
        return worst;
    };

    std::vector<double> F;
    eval(x, F);
    if (F.size() != n) return {}; // square systems only
    for (int it = 0; it < max_iter; ++it) {
        if (max_normalized(x) <= tol) return {true, x[0], x[1], x[2], ell ? x[3] : 0.0};
        std::vector<std::vector<double>> J(n, std::vector<double>(n, 0.0));
        double d = ell ? x[3] : 0.0;
        for (std::size_t i = 0; i < rs.conds.size(); ++i) {
            auto g = rs.conds[i].gradient(x[0], x[1], d, x[2], m);
            J[i][0] = g[0];
            J[i][1] = g[1];
            J[i][2] = g[2];
            if (ell) J[i][3] = g[3];
        }
        if (ell) {
            J[n - 1][0] = -gfac;
            J[n - 1][3] = 1.0;
        }
        std::vector<double> step = F;
        if (!gauss_solve(J, step)) return {};
        double f0 = 0;
        for (double f : F) f0 += f * f;
        double lambda = 1.0;
        std::vector<double> xn(x.size()), Fn;
        for (int bt = 0; bt < 24; ++bt) {
            for (std::size_t k = 0; k < x.size(); ++k) xn[k] = x[k] - lambda * step[k];
            eval(xn, Fn);
            double f1 = 0;
            for (double f : Fn) f1 += f * f;
            if (f1 < f0 || f1 < 1e-28) break;
            lambda *= 0.5;
        }
        x = xn;
        F = Fn;
    }
    if (max_normalized(x) <= tol) return {true, x[0], x[1], x[2], ell ? x[3] : 0.0};
    return {};
}

Branch classify_branch(const ReducedSystem& rs, double p, double q, double m) {
    double z = rs.family == AnsatzFamily::cnoidal ? q * m / p : q / p;
    auto [z1, z2] = order2_z_roots();
    return std::abs(z - z1) < std::abs(z - z2) ? Branch::root_z1 : Branch::root_z2;
}

SolutionParams to_params(const ReducedSystem& rs, double alpha, double beta, double p, double q,
                         double v, double d, double m, Branch br) {
    SolutionParams s;
    s.family = rs.family;
    s.order = rs.order;
    s.amplitude = p / alpha;
    s.inverse_width = std::sqrt(q / beta);
    s.velocity = v;
    s.offset = rs.elliptic ? d / alpha : 0.0;
    s.elliptic_m = rs.elliptic ? m : 0.0;
    s.branch = br;
    return s;
}

// ---- dense scan of the normalized SSQ ----------------------------------

struct ScanSetup {
    double p_lo, p_hi, q_lo, q_hi, v_lo, v_hi, m_lo, m_hi;
    int np, nq, nv, nm;
    bool negative_p;
};

ScanSetup scan_setup(bool elliptic, int resolution) {
    ScanSetup s;
    s.p_lo = 0.0;
    s.p_hi = 5.0;
    s.q_lo = 0.0;
    s.q_hi = 5.0;
    s.v_lo = 0.5;
    s.v_hi = 2.0;
    if (elliptic) {
        s.m_lo = 0.02;
        s.m_hi = 0.98;
        s.np = 40 * resolution;
        s.nq = 40 * resolution;
        s.nv = 21 * resolution;
        s.nm = 25 * resolution;
        s.negative_p = true; // inverted branches have A < 0
    } else {
        s.m_lo = s.m_hi = 0.0;
        s.np = 96 * resolution;
        s.nq = 96 * resolution;
        s.nv = 49 * resolution;
        s.nm = 1;
        s.negative_p = false;
    }
    return s;
}

double scan_ssq(const ReducedSystem& rs, double p, double q, double d, double v, double m) {
    double ssq = 0;
    for (const auto& c : rs.conds) {
        double r = c.normalized(p, q, d, v, m);
        ssq += r * r;
    }
    return ssq;
}

struct ScanResult {
    double min_ssq;
    double p, q, v, m;
};

ScanResult run_scan(const ReducedSystem& rs, const ScanSetup& s, Exec exec) {
    const long np = s.np, nq = s.nq, nv = s.nv, nm = s.nm;
    const long nsign = s.negative_p ? 2 : 1;
    const long total = nsign * np * nq * nv * nm;

    std::vector<double> gfac(static_cast<std::size_t>(nm), 0.0);
    std::vector<double> mval(static_cast<std::size_t>(nm), 0.0);
    for (long im = 0; im < nm; ++im) {
        double m = nm == 1 ? 0.0 : s.m_lo + (s.m_hi - s.m_lo) * double(im) / double(nm - 1);
        mval[static_cast<std::size_t>(im)] = m;
        gfac[static_cast<std::size_t>(im)] =
            rs.elliptic ? volume_offset_factor(rs.family, m) : 0.0;
    }

    auto point = [&](long idx, double& p, double& q, double& v, double& m, double& d) {
        long r = idx;
        long isign = r % nsign;
        r /= nsign;
        long ip = r % np;
        r /= np;
        long iq = r % nq;
        r /= nq;
        long iv = r % nv;
        r /= nv;
        long im = r;
        p = s.p_hi * double(ip + 1) / double(np);
        if (isign == 1) p = -p;
        q = s.q_hi * double(iq + 1) / double(nq);
        v = s.v_lo + (s.v_hi - s.v_lo) * double(iv) / double(nv - 1);
        m = mval[static_cast<std::size_t>(im)];
        d = p * gfac[static_cast<std::size_t>(im)];
    };

    double best = std::numeric_limits<double>::infinity();
    long best_idx = -1;
#ifdef _OPENMP
#pragma omp parallel if (exec == Exec::parallel)
    {
        double loc_best = std::numeric_limits<double>::infinity();
        long loc_idx = -1;
#pragma omp for schedule(static)
        for (long i = 0; i < total; ++i) {
            double p, q, v, m, d;
            point(i, p, q, v, m, d);
            double ssq = scan_ssq(rs, p, q, d, v, m);
            if (ssq < loc_best || (ssq == loc_best && i < loc_idx)) {
                loc_best = ssq;
                loc_idx = i;
            }
        }
#pragma omp critical
        {
            if (loc_best < best || (loc_best == best && loc_idx < best_idx)) {
                best = loc_best;
                best_idx = loc_idx;
            }
        }
    }
#else
    (void)exec;
#endif
    if (best_idx < 0) {
        for (long i = 0; i < total; ++i) {
            double p, q, v, m, d;
            point(i, p, q, v, m, d);
            double ssq = scan_ssq(rs, p, q, d, v, m);
            if (ssq < best) {
                best = ssq;
                best_idx = i;
            }
        }
    }
    double p, q, v, m, d;
    point(best_idx, p, q, v, m, d);
    return {best, p, q, v, m};
}

// Bounded Nelder-Mead on the scan objective, deterministic.
ScanResult refine_min(const ReducedSystem& rs, const ScanSetup& s, const ScanResult& start) {
    const bool ell = rs.elliptic;
    const int n = ell ? 4 : 3;

    auto clamp_point = [&](std::vector<double>& x) {
        double pmag = std::clamp(std::abs(x[0]), 1e-6, s.p_hi);
        x[0] = x[0] < 0 ? -pmag : pmag;
        x[1] = std::clamp(x[1], 1e-6, s.q_hi);
        x[2] = std::clamp(x[2], s.v_lo, s.v_hi);
        if (ell) x[3] = std::clamp(x[3], s.m_lo, s.m_hi);
    };
    auto f = [&](std::vector<double> x) {
        clamp_point(x);
        double m = ell ? x[3] : 0.0;
        double d = ell ? x[0] * volume_offset_factor(rs.family, m) : 0.0;
        return scan_ssq(rs, x[0], x[1], d, x[2], m);
    };

    std::vector<std::vector<double>> xs;
    std::vector<double> x0{start.p, start.q, start.v};
    if (ell) x0.push_back(start.m);
    xs.push_back(x0);
    double h = 0.05;
    for (int i = 0; i < n; ++i) {
        auto xi = x0;
        xi[static_cast<std::size_t>(i)] += h * std::max(0.2, std::abs(x0[static_cast<std::size_t>(i)]));
        xs.push_back(xi);
    }
    std::vector<double> fs;
    for (auto& x : xs) fs.push_back(f(x));

    for (int it = 0; it < 500; ++it) {
        // sort simplex
        std::vector<std::size_t> ord(xs.size());
        for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
        std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
        std::vector<std::vector<double>> xs2;
        std::vector<double> fs2;
        for (std::size_t i : ord) {
            xs2.push_back(xs[i]);
            fs2.push_back(fs[i]);
        }
        xs = xs2;
        fs = fs2;
        if (fs.back() - fs.front() < 1e-18 * (1 + std::abs(fs.front()))) break;

        std::vector<double> centroid(static_cast<std::size_t>(n), 0.0);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                centroid[static_cast<std::size_t>(k)] += xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / n;
        auto mix = [&](double t) {
            std::vector<double> x(static_cast<std::size_t>(n));
            for (int k = 0; k < n; ++k)
                x[static_cast<std::size_t>(k)] =
                    centroid[static_cast<std::size_t>(k)] +
                    t * (centroid[static_cast<std::size_t>(k)] - xs.back()[static_cast<std::size_t>(k)]);
            return x;
        };
        auto xr = mix(1.0);
        double fr = f(xr);
        if (fr < fs.front()) {
            auto xe = mix(2.0);
            double fe = f(xe);
            if (fe < fr) {
                xs.back() = xe;
                fs.back() = fe;
            } else {
                xs.back() = xr;
                fs.back() = fr;
            }
        } else if (fr < fs[fs.size() - 2]) {
            xs.back() = xr;
            fs.back() = fr;
        } else {
            auto xc = mix(-0.5);
            double fc = f(xc);
            if (fc < fs.back()) {
                xs.back() = xc;
                fs.back() = fc;
            } else {
                for (std::size_t i = 1; i < xs.size(); ++i) {
                    for (int k = 0; k < n; ++k)
                        xs[i][static_cast<std::size_t>(k)] =
                            0.5 * (xs[i][static_cast<std::size_t>(k)] + xs[0][static_cast<std::size_t>(k)]);
                    fs[i] = f(xs[i]);
                }
            }
        }
    }
    std::size_t bi = 0;
    for (std::size_t i = 1; i < fs.size(); ++i)
        if (fs[i] < fs[bi]) bi = i;
    auto xb = xs[bi];
    clamp_point(xb);
    return {fs[bi], xb[0], xb[1], xb[2], ell ? xb[3] : 0.0};
}

ScanCertificate make_scan_certificate(const ReducedSystem& rs, const ScanSetup& s,
                                      const ScanResult& grid, const ScanResult& refined,
                                      double threshold) {
    ScanCertificate c;
    c.p_lo = s.p_lo;
    c.p_hi = s.p_hi;
    c.q_lo = s.q_lo;
    c.q_hi = s.q_hi;
    c.v_lo = s.v_lo;
    c.v_hi = s.v_hi;
    c.m_lo = s.m_lo;
    c.m_hi = s.m_hi;
    c.negative_amplitude_scanned = s.negative_p;
    c.np = s.np;
    c.nq = s.nq;
    c.nv = s.nv;
    c.nm = s.nm;
    c.grid_min_ssq = grid.min_ssq;
    c.refined_min_ssq = std::min(grid.min_ssq, refined.min_ssq);
    c.argmin_p = refined.p;
    c.argmin_q = refined.q;
    c.argmin_v = refined.v;
    c.argmin_m = rs.elliptic ? refined.m : 0.0;
    c.threshold = threshold;
    return c;
}

// ---- exact elimination (hyperbolic family) ------------------------------

// Conditions in the reduced variables as two-symbol polynomials: SymA slot
// carries the p exponent and SymB the q exponent.
Poly reduced_poly(const Poly& c) {
    Poly out;
    for (const auto& [mono, coef] : c.terms()) {
        Monomial m;
        m.e[SymA] = mono.e[SymA];
        m.e[SymB] = static_cast<int8_t>(mono.e[SymBeta]);
        m.e[SymV] = mono.e[SymV];
        out += Poly::monomial(m, coef);
    }
    return out;
}

EliminationCertificate eliminate_hyperbolic(const ConditionSystem& sys) {
    EliminationCertificate cert;
    std::vector<Poly> vfree;
    int v_conditions = 0;
    for (const Poly& c : sys.conditions) {
        Poly rp = reduced_poly(c);
        if (rp.degree(SymV) == 0) {
            vfree.push_back(rp);
        } else {
            ++v_conditions;
            if (rp.degree(SymV) != 1) {
                cert.note = "velocity enters nonlinearly; elimination skipped";
                return cert;
            }
        }
    }
    if (v_conditions != 1 || vfree.size() < 2) {
        cert.note = "unexpected structure; elimination skipped";
        return cert;
    }
    // v is fixed linearly by its condition; a common root of the v-free
    // conditions is necessary for solvability. Pairwise resultants in p
    // leave univariate polynomials in q that must share a positive root.
    UPoly g;
    bool first = true;
    for (std::size_t i = 0; i < vfree.size(); ++i)
        for (std::size_t j = i + 1; j < vfree.size(); ++j) {
            UPoly r = resultant(vfree[i], vfree[j], SymA, SymB).without_zero_roots();
            if (r.is_zero()) continue;
            g = first ? r.normalized() : upoly_gcd(g, r);
            first = false;
        }
    if (first) {
        cert.note = "all resultants vanish identically; elimination inconclusive";
        return cert;
    }
    cert.completed = true;
    cert.eliminated = g.to_string("q");
    cert.positive_root_count = g.degree() == 0 ? 0 : count_positive_roots(g);
    cert.note = cert.positive_root_count == 0
                    ? "no positive root of the eliminated polynomial: no admissible B^2"
                    : "eliminated polynomial has positive roots; see scan certificate";
    return cert;
}

// Discrete exact solve for the hyperbolic family (square system).
std::vector<SolutionParams> solve_hyperbolic_discrete(const ConditionSystem& sys,
                                                      const ReducedSystem& rs, double alpha,
                                                      double beta, double tol,
                                                      std::vector<std::string>& warnings) {
    Poly vcond;
    std::vector<Poly> vfree;
    for (const Poly& c : sys.conditions) {
        Poly rp = reduced_poly(c);
        (rp.degree(SymV) > 0 ? vcond : vfree.emplace_back()) = rp;
    }
    std::vector<SolutionParams> out;
    if (vfree.size() != 2 || vcond.is_zero()) return out;

    UPoly rq = resultant(vfree[0], vfree[1], SymA, SymB).without_zero_roots();
    for (double q : positive_roots(rq, 100.0)) {
        // roots in p of the first v-free condition at this q
        auto pc = vfree[0].coefficients_in(SymA);
        // evaluate coefficients at q (they are univariate in SymB)
        std::vector<double> pcv;
        for (const auto& cp : pc) {
            std::array<double, kSymCount> vals{};
            vals[SymB] = q;
            pcv.push_back(cp.evaluate(vals));
        }
        // Newton from a few starts on the 1-D polynomial in p
        for (double p0 : {0.05, 0.2, 0.5, 1.0, 2.0, 4.0}) {
            double p = p0;
            for (int it = 0; it < 80; ++it) {
                double f = 0, df = 0;
                for (std::size_t k = pcv.size(); k-- > 0;) f = f * p + pcv[k];
                for (std::size_t k = pcv.size(); k-- > 1;)
                    df = df * p + pcv[k] * static_cast<double>(k);
                if (std::abs(df) < 1e-300) break;
                double step = f / df;
                p -= step;
                if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(p))) break;
            }
            if (!(p > 0) || !std::isfinite(p)) continue;
            NewtonResult nr = newton_solve(rs, 0.0, p, q, 1.0, tol);
            if (!nr.converged || nr.p <= 0 || nr.q <= 0) continue;
            bool dup = false;
            for (const auto& s : out)
                if (std::abs(s.amplitude - nr.p / alpha) < 1e-8 * std::max(1.0, std::abs(nr.p / alpha)))
                    dup = true;
            if (dup) continue;
            out.push_back(to_params(rs, alpha, beta, nr.p, nr.q, nr.v, 0.0,
                                    0.0, classify_branch(rs, nr.p, nr.q, 1.0)));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const SolutionParams& a, const SolutionParams& b) { return a.amplitude < b.amplitude; });
    if (out.empty()) warnings.push_back("no admissible root survived the discrete solve");
    return out;
}

double clamp_m(double m, std::vector<std::string>& warnings) {
    if (!(m > 0.0 && m < 1.0)) throw std::domain_error("elliptic parameter m must lie in (0,1)");
    if (m < kMClampLo) {
        warnings.push_back("m clamped to 1e-12");
        return kMClampLo;
    }
    if (m > kMClampHi) {
        warnings.push_back("m clamped to 1-1e-12");
        return kMClampHi;
    }
    return m;
}

void check_alpha_beta(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::domain_error("alpha and beta must be positive");
}

// Order-2 elliptic branches, solved triangularly at the given m: the pure
// (p,q) condition is the z-quadratic; along its branch line q = z*p/m (or
// z*p), with d tied by the volume rule, the remaining v-free condition is a
// quadratic in p through the origin, so the amplitude is a ratio of two
// sampled values; v then follows linearly. Newton polishes the full system.
std::vector<SolutionParams> solve_elliptic_discrete(const ReducedSystem& rs, double alpha,
                                                    double beta, double m, double tol,
                                                    std::vector<std::string>& warnings) {
    const CompiledCondition* c_v = nullptr;   // carries v
    const CompiledCondition* c_amp = nullptr; // v-free, carries d
    const CompiledCondition* c_z = nullptr;   // pure (p,q)
    for (const auto& c : rs.conds) {
        bool has_v = false, has_d = false;
        for (const auto& t : c.terms) {
            has_v = has_v || t.ev > 0;
            has_d = has_d || t.ed > 0;
        }
        if (has_v) c_v = &c;
        else if (has_d) c_amp = &c;
        else c_z = &c;
    }
    std::vector<SolutionParams> out;
    if (!c_v || !c_amp || !c_z) {
        warnings.push_back("unexpected order-2 structure; no triangular solve");
        return out;
    }

    auto [z1, z2] = order2_z_roots();
    double gfac = volume_offset_factor(rs.family, m);
    for (double z : {z2, z1}) {
        auto line_q = [&](double p) { return rs.family == AnsatzFamily::cnoidal ? z * p / m : z * p; };
        auto f_amp = [&](double p) { return c_amp->value(p, line_q(p), gfac * p, 0.0, m); };
        // f_amp(p) = a p + b p^2 exactly
        double f1 = f_amp(1.0), f2 = f_amp(2.0);
        double b = 0.5 * f2 - f1;
        double a = 2.0 * f1 - 0.5 * f2;
        if (std::abs(b) < 1e-14 * std::max(1.0, std::abs(a))) continue; // degenerate branch
        double p = -a / b;
        double q = line_q(p);
        if (!(q > 0) || !std::isfinite(p)) continue; // B^2 <= 0: branch not admissible here
        // v from the linear condition
        double g0 = c_v->value(p, q, gfac * p, 0.0, m);
        double g1 = c_v->value(p, q, gfac * p, 1.0, m);
        if (std::abs(g1 - g0) < 1e-300) continue;
        double v = -g0 / (g1 - g0);
        NewtonResult nr = newton_solve(rs, m, p, q, v, tol);
        if (!nr.converged || !(nr.q > 0)) {
            warnings.push_back("Newton polish failed on a triangular branch solution");
            continue;
        }
        out.push_back(to_params(rs, alpha, beta, nr.p, nr.q, nr.v, nr.d, m,
                                classify_branch(rs, nr.p, nr.q, m)));
    }
    return out;
}

ConsistencyVerdict inconsistency_verdict(const ConditionSystem& sys, const ReducedSystem& rs,
                                         const AnalysisOptions& opts) {
    ConsistencyVerdict v;
    v.family = sys.family;
    v.order = sys.order;
    ScanSetup setup = scan_setup(rs.elliptic, opts.resolution);
    ScanResult grid = run_scan(rs, setup, opts.exec);
    ScanResult refined = refine_min(rs, setup, grid);
    if (refined.min_ssq > grid.min_ssq) refined = grid;
    v.scan = make_scan_certificate(rs, setup, grid, refined, opts.threshold);
    if (!rs.elliptic) v.elimination = eliminate_hyperbolic(sys);

    if (refined.min_ssq > opts.threshold) {
        v.kind = VerdictKind::inconsistent;
        return v;
    }
    // The scan found a near-zero: chase it before conceding a solution.
    NewtonResult nr = newton_solve(rs, refined.m, refined.p, refined.q, refined.v, opts.newton_tol);
    if (nr.converged && nr.q > 0) {
        v.kind = VerdictKind::discrete;
        v.warnings.push_back("scan located a solution of an overdetermined system");
        v.solutions.push_back(to_params(rs, 1.0, 1.0, nr.p, nr.q, nr.v, nr.d, refined.m,
                                        classify_branch(rs, nr.p, nr.q, rs.elliptic ? refined.m : 1.0)));
    } else {
        v.kind = VerdictKind::inconsistent;
        v.warnings.push_back("scan minimum below threshold but Newton did not converge");
    }
    return v;
}

} // namespace

ConsistencyVerdict consistency_analysis(const ConditionSystem& system, double alpha, double beta,
                                        const AnalysisOptions& opts) {
    check_alpha_beta(alpha, beta);
    if (system.conditions.empty()) throw std::invalid_argument("empty condition system");
    ReducedSystem rs = compile(system);
    int unknowns = rs.elliptic ? 4 : 3;
    int equations = static_cast<int>(system.conditions.size()) + (rs.elliptic ? 1 : 0);
    int dof = unknowns - equations;

    ConsistencyVerdict v;
    v.family = system.family;
    v.order = system.order;
    if (dof > 0) {
        v.kind = VerdictKind::family;
        v.dimension = dof;
        return v;
    }
    if (dof == 0) {
        v.kind = VerdictKind::discrete;
        if (!rs.elliptic) {
            v.solutions =
                solve_hyperbolic_discrete(system, rs, alpha, beta, opts.newton_tol, v.warnings);
        } else {
            v.warnings.push_back(
                "discrete per elliptic parameter; solve the family interface at a concrete m");
        }
        return v;
    }
    return inconsistency_verdict(system, rs, opts);
}

ConsistencyVerdict solve_soliton(int order, double alpha, double beta,
                                 std::optional<double> amplitude, Exec exec) {
    check_alpha_beta(alpha, beta);
    const ConditionSystem& sys = cached_system(AnsatzFamily::soliton, order);
    AnalysisOptions opts;
    opts.exec = exec;

    if (order == 1) {
        if (!amplitude)
            throw std::invalid_argument("first-order soliton family: amplitude A is the free parameter");
        double A = *amplitude;
        if (!(A > 0)) throw std::domain_error("soliton amplitude must be positive");
        ConsistencyVerdict v;
        v.kind = VerdictKind::family;
        v.family = AnsatzFamily::soliton;
        v.order = 1;
        v.dimension = 1;
        SolutionParams s;
        s.family = AnsatzFamily::soliton;
        s.order = 1;
        s.amplitude = A;
        s.inverse_width = std::sqrt(3.0 * alpha * A / (4.0 * beta));
        s.velocity = 1.0 + 0.5 * alpha * A;
        s.branch = Branch::family_parameter;
        v.solutions.push_back(s);
        return v;
    }
    if (order == 2) {
        ConsistencyVerdict v = consistency_analysis(sys, alpha, beta, opts);
        if (amplitude) v.warnings.push_back("amplitude is fixed at order 2; supplied value ignored");
        // closed form from the z-quadratic as a cross-check seed
        auto [z1, z2] = order2_z_roots();
        (void)z1;
        double p = (z2 - 0.75) / (2.75 * z2 - (19.0 / 3.0) * z2 * z2);
        double q = z2 * p;
        ReducedSystem rs = compile(sys);
        NewtonResult nr = newton_solve(rs, 0.0, p, q, 1.0, opts.newton_tol);
        if (nr.converged && v.solutions.empty())
            v.solutions.push_back(to_params(rs, alpha, beta, nr.p, nr.q, nr.v, 0.0, 0.0,
                                            Branch::root_z2));
        return v;
    }
    if (order == 3) return consistency_analysis(sys, alpha, beta, opts);
    throw std::invalid_argument("soliton solve supports orders 1-3");
}

namespace {

ConsistencyVerdict solve_elliptic(AnsatzFamily fam, int order, double alpha, double beta, double m,
                                  std::optional<double> amplitude, Exec exec) {
    check_alpha_beta(alpha, beta);
    AnalysisOptions opts;
    opts.exec = exec;
    const ConditionSystem& sys = cached_system(fam, order);

    if (order == 3) {
        ConsistencyVerdict v = consistency_analysis(sys, alpha, beta, opts);
        return v;
    }

    ConsistencyVerdict v;
    v.family = fam;
    v.order = order;
    double mc = clamp_m(m, v.warnings);
    double r = complete_E(mc) / complete_K(mc);

    if (order == 1) {
        if (!amplitude)
            throw std::invalid_argument("first-order family: amplitude A is the free parameter");
        double A = *amplitude;
        if (!(A > 0)) throw std::domain_error("first-order periodic amplitude must be positive");
        v.kind = VerdictKind::family;
        v.dimension = 1;
        SolutionParams s;
        s.family = fam;
        s.order = 1;
        s.amplitude = A;
        s.elliptic_m = mc;
        s.branch = Branch::family_parameter;
        s.offset = A * volume_offset_factor(fam, mc);
        if (fam == AnsatzFamily::cnoidal) {
            s.inverse_width = std::sqrt(3.0 * alpha * A / (4.0 * beta * mc));
            s.velocity = 1.0 + (alpha * A / (2.0 * mc)) * (2.0 - mc - 3.0 * r);
        } else {
            s.inverse_width = std::sqrt(3.0 * alpha * A / (4.0 * beta));
            s.velocity = 1.0 + (alpha * A / 8.0) * (5.0 - mc - 6.0 * r);
        }
        v.solutions.push_back(s);
        return v;
    }
    if (order == 2) {
        if (amplitude) v.warnings.push_back("amplitude is fixed at order 2; supplied value ignored");
        v.kind = VerdictKind::discrete;
        ReducedSystem rs = compile(sys);
        v.solutions = solve_elliptic_discrete(rs, alpha, beta, mc, opts.newton_tol, v.warnings);
        if (v.solutions.empty()) v.warnings.push_back("multi-start Newton found no solution");
        return v;
    }
    throw std::invalid_argument("periodic solve supports orders 1-3");
}

} // namespace

ConsistencyVerdict solve_cnoidal(int order, double alpha, double beta, double m,
                                 std::optional<double> amplitude, Exec exec) {
    return solve_elliptic(AnsatzFamily::cnoidal, order, alpha, beta, m, amplitude, exec);
}

ConsistencyVerdict solve_superposition(int order, bool plus_sign, double alpha, double beta,
                                       double m, std::optional<double> amplitude, Exec exec) {
    AnsatzFamily fam =
        plus_sign ? AnsatzFamily::superposition_plus : AnsatzFamily::superposition_minus;
    return solve_elliptic(fam, order, alpha, beta, m, amplitude, exec);
}

double system_residual(const ConditionSystem& system, const SolutionParams& params, double alpha,
                       double beta) {
    std::array<double, kSymCount> vals{};
    vals[SymAlpha] = alpha;
    vals[SymBeta] = beta;
    vals[SymA] = params.amplitude;
    vals[SymB] = params.inverse_width;
    vals[SymV] = params.velocity;
    vals[SymD] = params.offset;
    vals[SymM] = params.elliptic_m;
    vals[SymS] = params.elliptic_m > 0 ? std::sqrt(params.elliptic_m) : 0.0;

    double worst = 0.0;
    for (const Poly& c : system.conditions) {
        double sum = 0.0, mag = 0.0;
        for (const auto& [mono, coef] : c.terms()) {
            double t = to_double(coef);
            for (int i = 0; i < kSymCount; ++i)
                for (int k = 0; k < mono.e[i]; ++k) t *= vals[i];
            sum += t;
            mag += std::abs(t);
        }
        if (mag > 0) worst = std::max(worst, std::abs(sum) / mag);
    }
    if (system.has_volume_constraint && is_elliptic(params.family)) {
        double want = params.amplitude * volume_offset_factor(params.family, params.elliptic_m);
        double denom = std::abs(params.offset) + std::abs(want) + 1e-30;
        worst = std::max(worst, std::abs(params.offset - want) / denom);
    }
    return worst;
}

} // namespace kdvlab
