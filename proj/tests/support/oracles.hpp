#pragma once

// Independent oracles for the special-function and quadrature checks. These
// deliberately use different algorithms from the library: K and E come from
// adaptive Simpson quadrature of the defining integrals and from the
// classic AGM with the c_n sum, cn/sn/dn from the AGM backward phi
// recurrence (ascending amplitude chain), and period means from plain
// composite Simpson. Nothing here touches the library implementations.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// K(m) by quadrature of 1/sqrt(1 - m sin^2 t).
inline double K_quadrature(double m) {
    return simpson([m](double t) { double s = std::sin(t); return 1.0 / std::sqrt(1.0 - m * s * s); },
                   0.0, 1.5707963267948966, 4096);
}

// E(m) by quadrature of sqrt(1 - m sin^2 t).
inline double E_quadrature(double m) {
    return simpson([m](double t) { double s = std::sin(t); return std::sqrt(1.0 - m * s * s); },
                   0.0, 1.5707963267948966, 4096);
}

// K(m) by the arithmetic-geometric mean.
inline double K_agm(double m) {
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int i = 0; i < 64 && std::abs(a - b) > 1e-15 * a; ++i) {
        double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return 1.5707963267948966 / a;
}

// E(m) via the AGM c_n sum.
inline double E_agm(double m) {
    double a = 1.0, b = std::sqrt(1.0 - m), c = std::sqrt(m);
    double sum = 0.5 * c * c, pow2 = 0.5;
    for (int i = 0; i < 64 && std::abs(c) > 1e-15 * a; ++i) {
        double an = 0.5 * (a + b);
        c = 0.5 * (a - b);
        b = std::sqrt(a * b);
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    return (1.5707963267948966 / a) * (1.0 - sum);
}

struct Jacobi {
    double sn, cn, dn;
};

// cn/sn/dn from the AGM scale with the backward phi recurrence.
inline Jacobi jacobi_agm(double u, double m) {
    if (m < 1e-12) {
        double s = std::sin(u), c = std::cos(u);
        return {s, c, 1.0 - 0.5 * m * s * s};
    }
    if (1.0 - m < 1e-12) {
        double t = std::tanh(u);
        double se = 1.0 / std::cosh(u);
        return {t, se, se};
    }
    std::vector<double> a{1.0}, c{std::sqrt(m)};
    double b = std::sqrt(1.0 - m);
    double twon = 1.0;
    int i = 0;
    while (std::abs(c.back() / a.back()) > 1e-15) {
        double an = 0.5 * (a[static_cast<std::size_t>(i)] + b);
        c.push_back(0.5 * (a[static_cast<std::size_t>(i)] - b));
        b = std::sqrt(a[static_cast<std::size_t>(i)] * b);
        a.push_back(an);
        ++i;
        twon *= 2.0;
        if (i > 60) break;
    }
    double phi = twon * a.back() * u;
    for (int n = i; n > 0; --n) {
        double t = c[static_cast<std::size_t>(n)] * std::sin(phi) / a[static_cast<std::size_t>(n)];
        phi = 0.5 * (std::asin(t) + phi);
    }
    double sn = std::sin(phi), cn = std::cos(phi);
    double dn = std::sqrt(1.0 - m * sn * sn);
    return {sn, cn, dn};
}

// Mean of f over [0, period] by composite Simpson with many panels.
inline double period_mean(const std::function<double(double)>& f, double period) {
    return simpson(f, 0.0, period, 16384) / period;
}

} // namespace oracle
