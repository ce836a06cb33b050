#pragma once

#include <cmath>

namespace kdvlab {

// Complete elliptic integrals and Jacobi elliptic functions, built on the
// arithmetic-geometric mean and the descending Landen (Gauss) transformation.
// No external special-function dependency; accuracy targets are 1e-13 for
// K/E and 1e-12 absolute for cn/sn/dn.

// First kind. Domain 0 <= m < 1; diverges logarithmically at m = 1.
double complete_K(double m);

// Second kind. Domain 0 <= m <= 1; E(1) = 1 exactly.
double complete_E(double m);

struct JacobiTriple {
    double cn;
    double sn;
    double dn;
};

// Simultaneous cn, sn, dn for finite u and m in [0,1]. The three values come
// from a single Landen descent, so sn^2+cn^2-1 and dn^2-(1-m)-m*cn^2 vanish
// to rounding error.
JacobiTriple jacobi_cn_sn_dn(double u, double m);

inline double sech(double x) { return 1.0 / std::cosh(x); }

} // namespace kdvlab
