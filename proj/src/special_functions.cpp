#include "kdvlab/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace kdvlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Landen/AGM chains stop once the modulus update drops below this.
constexpr double kModulusTol = 1e-15;
constexpr double kNearOne = 1e-12;   // switch to hyperbolic-limit series
constexpr double kNearZero = 1e-14;  // switch to circular-limit series

void check_m_range(double m, double hi, const char* who) {
    if (!(m >= 0.0 && m <= hi)) // also rejects NaN
        throw std::domain_error(std::string(who) + ": elliptic parameter m out of range");
}

// K for m bounded away from 1 is plain AGM; the sum accumulated alongside
// gives E via E = K * (1 - sum 2^{n-1} c_n^2).
void agm_KE(double m, double& K, double& E) {
    double a = 1.0;
    double b = std::sqrt(1.0 - m);
    double c = std::sqrt(m);
    double sum = 0.5 * c * c;
    double pow2 = 0.5; // 2^{n-1} for n = 0
    for (int n = 0; n < 64 && std::abs(c) > kModulusTol * a; ++n) {
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    K = 0.5 * kPi / a;
    E = K * (1.0 - sum);
}

JacobiTriple jacobi_small_m(double u, double m) {
    // A&S 16.13: first-order corrections in m around the circular limit.
    double s = std::sin(u), c = std::cos(u);
    double corr = 0.25 * m * (u - s * c);
    return {c + corr * s, s - corr * c, 1.0 - 0.5 * m * s * s};
}

// Hyperbolic-limit series (A&S 16.15), valid for |u| not much beyond K/2.
// Written in overflow-safe combinations: sinh*cosh*sech^2 = tanh and
// sinh*cosh*tanh*sech = cosh - sech.
JacobiTriple jacobi_near_one_core(double u, double m1) {
    double t = std::tanh(u), se = sech(u);
    if (m1 == 0.0) return {se, t, se};
    double ch = std::cosh(u);
    double q = 0.25 * m1;
    double sn = t - q * (t - u * se * se);
    double cn = se + q * (ch - se - u * t * se);
    double dn = se + q * (ch - se + u * t * se);
    return {cn, sn, dn};
}

JacobiTriple jacobi_near_one(double u, double m) {
    double m1 = 1.0 - m;
    if (m1 <= 0.0) return jacobi_near_one_core(u, 0.0);
    // Quarter period from the asymptotic expansion of K near m = 1.
    double lg = std::log(4.0 / std::sqrt(m1));
    double K = lg + 0.25 * m1 * (lg - 1.0);
    // sn odd, cn and dn even.
    double sgn_u = u < 0 ? -1.0 : 1.0;
    double w = std::abs(u);
    // Reduce by the 2K half period: sn and cn flip sign per step.
    double flips = std::floor((w + K) / (2.0 * K));
    w -= 2.0 * K * flips;
    double sign = (std::fmod(flips, 2.0) == 0.0) ? 1.0 : -1.0;
    double aw = std::abs(w);
    JacobiTriple r;
    if (aw <= 0.5 * K) {
        r = jacobi_near_one_core(w, m1);
    } else {
        // Map w = w' +- K into the series' range via the quarter-period
        // shift identities; k' = sqrt(m1).
        double kp = std::sqrt(m1);
        double wp = w - (w > 0 ? K : -K);
        JacobiTriple b = jacobi_near_one_core(wp, m1);
        double cn_shift = -kp * b.sn / b.dn;
        double sn_shift = b.cn / b.dn;
        double dn_shift = kp / b.dn;
        if (w < 0) { sn_shift = -sn_shift; cn_shift = -cn_shift; } // parity of the shift direction
        r = {cn_shift, sn_shift, dn_shift};
    }
    r.sn *= sign * sgn_u;
    r.cn *= sign;
    return r;
}

// Descending Gauss/Landen transformation. Each level maps m to
// mu^2 with mu = (1-k')/(1+k'), recursing until the circular limit applies.
JacobiTriple jacobi_descend(double u, double m) {
    if (m < kNearZero) return jacobi_small_m(u, m);
    double kp = std::sqrt(1.0 - m);
    double mu = (1.0 - kp) / (1.0 + kp);
    JacobiTriple inner = jacobi_descend(u / (1.0 + mu), mu * mu);
    double s2 = inner.sn * inner.sn;
    double denom = 1.0 + mu * s2;
    return {inner.cn * inner.dn / denom,
            (1.0 + mu) * inner.sn / denom,
            (1.0 - mu * s2) / denom};
}

} // namespace

double complete_K(double m) {
    check_m_range(m, 1.0, "complete_K");
    if (m == 1.0) throw std::domain_error("complete_K: diverges at m = 1");
    double K, E;
    agm_KE(m, K, E);
    return K;
}

double complete_E(double m) {
    check_m_range(m, 1.0, "complete_E");
    if (m == 1.0) return 1.0;
    double m1 = 1.0 - m;
    if (m1 < kNearOne) {
        double lg = std::log(4.0 / std::sqrt(m1));
        return 1.0 + 0.5 * m1 * (lg - 0.5);
    }
    double K, E;
    agm_KE(m, K, E);
    return E;
}

JacobiTriple jacobi_cn_sn_dn(double u, double m) {
    if (!std::isfinite(u)) throw std::domain_error("jacobi_cn_sn_dn: non-finite argument");
    check_m_range(m, 1.0, "jacobi_cn_sn_dn");
    if (1.0 - m < kNearOne) return jacobi_near_one(u, m);
    return jacobi_descend(u, m);
}

} // namespace kdvlab
