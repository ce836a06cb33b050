#include "kdvlab/numeric_verifier.hpp"
#include "kdvlab/basis_expression.hpp"
#include "kdvlab/special_functions.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kdvlab {

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_grid(const GridSpec& g) {
    if (g.n < 16 || !power_of_two(g.n))
        throw std::invalid_argument("grid size must be a power of two, at least 16");
    if (!(g.length > 0)) throw std::invalid_argument("grid length must be positive");
}

void check_params(const SolutionParams& p) {
    if (!(p.inverse_width > 0) || !std::isfinite(p.inverse_width))
        throw std::domain_error("profile requires B > 0");
    if (is_elliptic(p.family) && !(p.elliptic_m > 0.0 && p.elliptic_m < 1.0))
        throw std::invalid_argument("elliptic profile requires m in (0,1)");
}

double profile_value(const SolutionParams& p, double u) {
    switch (p.family) {
        case AnsatzFamily::soliton: {
            double se = sech(u);
            return p.amplitude * se * se;
        }
        case AnsatzFamily::cnoidal: {
            JacobiTriple j = jacobi_cn_sn_dn(u, p.elliptic_m);
            return p.amplitude * j.cn * j.cn + p.offset;
        }
        case AnsatzFamily::superposition_plus:
        case AnsatzFamily::superposition_minus: {
            JacobiTriple j = jacobi_cn_sn_dn(u, p.elliptic_m);
            double cross = std::sqrt(p.elliptic_m) * j.cn * j.dn;
            if (p.family == AnsatzFamily::superposition_minus) cross = -cross;
            return 0.5 * p.amplitude * (j.dn * j.dn + cross) + p.offset;
        }
    }
    throw std::invalid_argument("unknown profile family");
}

// Derivative expressions of the profile, instantiated numerically: lists of
// (coefficient, basis monomial) per derivative order.
struct InstantiatedDerivs {
    BasisFamily basis;
    std::vector<std::vector<std::pair<double, BasisMonomial>>> orders;
};

InstantiatedDerivs instantiate(const SolutionParams& p, int max_order) {
    InstantiatedDerivs out;
    out.basis = basis_family(p.family);
    std::array<double, kSymCount> vals{};
    vals[SymAlpha] = 1.0; // alpha, beta live in the equation terms, not here
    vals[SymBeta] = 1.0;
    vals[SymA] = p.amplitude;
    vals[SymB] = p.inverse_width;
    vals[SymV] = p.velocity;
    vals[SymD] = p.offset;
    vals[SymM] = p.elliptic_m;
    vals[SymS] = p.elliptic_m > 0 ? std::sqrt(p.elliptic_m) : 0.0;

    BasisExpression expr = make_ansatz(p.family);
    for (int k = 0; k <= max_order; ++k) {
        std::vector<std::pair<double, BasisMonomial>> inst;
        for (const auto& [mono, poly] : expr.terms())
            inst.emplace_back(poly.evaluate(vals), mono);
        out.orders.push_back(std::move(inst));
        if (k < max_order) expr = expr.differentiate();
    }
    return out;
}

double eval_instantiated(const std::vector<std::pair<double, BasisMonomial>>& inst, double f1,
                         double f2, double f3) {
    double sum = 0;
    for (const auto& [c, m] : inst) {
        double t = c;
        for (int k = 0; k < m.a; ++k) t *= f1;
        for (int k = 0; k < m.b; ++k) t *= f2;
        for (int k = 0; k < m.c; ++k) t *= f3;
        sum += t;
    }
    return sum;
}

// 64-point Gauss-Legendre nodes/weights on [-1,1], Newton on the Legendre
// recurrence.
struct GaussRule {
    std::array<double, 64> x{}, w{};
    GaussRule() {
        const int n = 64;
        for (int i = 0; i < n / 2; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double p0 = 0, p1 = 0;
            for (int it = 0; it < 100; ++it) {
                p0 = 1.0;
                p1 = 0.0;
                for (int k = 0; k < n; ++k) {
                    double p2 = p1;
                    p1 = p0;
                    p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
                }
                double dp = n * (t * p0 - p1) / (t * t - 1.0);
                double step = p0 / dp;
                t -= step;
                if (std::abs(step) < 1e-16) break;
            }
            p0 = 1.0;
            p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * t * p1 - k * p2) / (k + 1.0);
            }
            double dp = n * (t * p0 - p1) / (t * t - 1.0);
            x[static_cast<std::size_t>(i)] = -t;
            x[static_cast<std::size_t>(n - 1 - i)] = t;
            double wi = 2.0 / ((1.0 - t * t) * dp * dp);
            w[static_cast<std::size_t>(i)] = wi;
            w[static_cast<std::size_t>(n - 1 - i)] = wi;
        }
    }
};

} // namespace

void WaveField::validate() const {
    int n = static_cast<int>(samples.size());
    if (n < 16 || !power_of_two(n))
        throw std::invalid_argument("field size must be a power of two, at least 16");
    if (!(dx > 0)) throw std::invalid_argument("field spacing must be positive");
    for (double s : samples)
        if (!std::isfinite(s)) throw std::invalid_argument("field contains non-finite samples");
}

WaveField eval_field(const SolutionParams& params, const GridSpec& grid, double t, Exec exec) {
    check_grid(grid);
    check_params(params);
    WaveField f;
    f.x0 = grid.x0;
    f.dx = grid.length / grid.n;
    f.samples.resize(static_cast<std::size_t>(grid.n));
    const double B = params.inverse_width, v = params.velocity;
    const long n = grid.n;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
#endif
    for (long i = 0; i < n; ++i) {
        double x = f.x0 + f.dx * static_cast<double>(i);
        f.samples[static_cast<std::size_t>(i)] = profile_value(params, B * (x - v * t));
    }
    (void)exec;
    return f;
}

double residual_max(const SolutionParams& params, int order, double alpha, double beta,
                    const GridSpec& grid, double t, Exec exec) {
    check_grid(grid);
    check_params(params);
    if (!(alpha > 0) || !(beta > 0)) throw std::domain_error("alpha and beta must be positive");
    const EquationSpec& eq = get_equation(order);
    int max_order = 1;
    for (const auto& term : eq.terms)
        for (int fo : term.factors) max_order = std::max(max_order, fo);
    InstantiatedDerivs derivs = instantiate(params, max_order);

    struct TermSpec {
        double scale;
        std::vector<int> factors;
        bool time;
    };
    std::vector<TermSpec> terms;
    for (const auto& term : eq.terms) {
        TermSpec ts;
        ts.scale = to_double(term.coeff);
        for (int k = 0; k < term.alpha_pow; ++k) ts.scale *= alpha;
        for (int k = 0; k < term.beta_pow; ++k) ts.scale *= beta;
        ts.factors = term.factors;
        ts.time = term.is_time;
        terms.push_back(ts);
    }

    const double B = params.inverse_width, v = params.velocity, m = params.elliptic_m;
    const bool hyp = derivs.basis == BasisFamily::hyperbolic;
    const double dx = grid.length / grid.n;
    const long n = grid.n;

    double worst = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : worst) if (exec == Exec::parallel)
#endif
    for (long i = 0; i < n; ++i) {
        double x = grid.x0 + dx * static_cast<double>(i);
        double u = B * (x - v * t);
        double f1, f2, f3 = 1.0;
        if (hyp) {
            f1 = sech(u);
            f2 = std::tanh(u);
        } else {
            JacobiTriple j = jacobi_cn_sn_dn(u, m);
            f1 = j.cn;
            f2 = j.sn;
            f3 = j.dn;
        }
        std::array<double, 8> dval{};
        for (std::size_t k = 0; k < derivs.orders.size(); ++k)
            dval[k] = eval_instantiated(derivs.orders[k], f1, f2, f3);

        double sum = 0.0, maxmag = 0.0;
        for (const auto& ts : terms) {
            double val = ts.scale;
            if (ts.time) {
                val *= -v * dval[1];
            } else {
                for (int fo : ts.factors) val *= dval[static_cast<std::size_t>(fo)];
            }
            sum += val;
            maxmag = std::max(maxmag, std::abs(val));
        }
        double res = maxmag > 0 ? std::abs(sum) / maxmag : 0.0;
        worst = std::max(worst, res);
    }
    (void)exec;
    return worst;
}

double volume_mean(const SolutionParams& params) {
    if (!is_elliptic(params.family))
        throw std::invalid_argument("volume mean is defined for periodic profiles only");
    check_params(params);
    static const GaussRule rule;
    const double K = complete_K(params.elliptic_m);
    const double quarter = K / params.inverse_width;
    double integral = 0.0;
    for (int panel = 0; panel < 4; ++panel) {
        double a = quarter * panel;
        double half = 0.5 * quarter;
        double mid = a + half;
        for (int i = 0; i < 64; ++i) {
            double x = mid + half * rule.x[static_cast<std::size_t>(i)];
            integral += half * rule.w[static_cast<std::size_t>(i)] *
                        profile_value(params, params.inverse_width * x);
        }
    }
    return integral / (4.0 * quarter);
}

void write_field_csv(const WaveField& field, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    os << "x,eta\n";
    char buf[80];
    for (std::size_t i = 0; i < field.samples.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", field.x_at(i), field.samples[i]);
        os << buf;
    }
}

WaveField read_field_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::getline(is, line);
    if (line != "x,eta") throw std::runtime_error("bad field CSV header in " + path);
    WaveField f;
    std::vector<double> xs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("bad field CSV row");
        xs.push_back(std::stod(line.substr(0, comma)));
        f.samples.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 2) throw std::runtime_error("field CSV too short");
    f.x0 = xs.front();
    f.dx = xs[1] - xs[0];
    f.validate();
    return f;
}

} // namespace kdvlab
