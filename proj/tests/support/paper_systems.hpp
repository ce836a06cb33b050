#pragma once

// The printed first- and second-order condition systems, transcribed as
// polynomials for the derivation regression tests.

#include "kdvlab/polynomial.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace paper {

using kdvlab::Monomial;
using kdvlab::Poly;
using kdvlab::rat;
using kdvlab::Sym;

struct Term {
    long num;
    long den;
    std::vector<std::pair<Sym, int>> exps;
};

inline Poly build(std::initializer_list<Term> terms) {
    Poly p;
    for (const auto& t : terms) {
        Monomial m;
        for (auto [s, e] : t.exps) m.e[s] = static_cast<int8_t>(e);
        p += Poly::monomial(m, rat(t.num, t.den));
    }
    return p;
}

using kdvlab::SymA;
using kdvlab::SymAlpha;
using kdvlab::SymB;
using kdvlab::SymBeta;
using kdvlab::SymD;
using kdvlab::SymM;
using kdvlab::SymS;
using kdvlab::SymV;

// first-order solitary profile: G0 and G2 (cosh-power form)
inline Poly soliton1_G0() {
    return build({{3, 1, {}},
                  {-3, 1, {{SymV, 1}}},
                  {9, 1, {{SymAlpha, 1}, {SymA, 1}}},
                  {-10, 1, {{SymBeta, 1}, {SymB, 2}}}});
}
inline Poly soliton1_G2() {
    return build({{3, 1, {}}, {-3, 1, {{SymV, 1}}}, {2, 1, {{SymBeta, 1}, {SymB, 2}}}});
}

// second-order solitary profile: C0, C2, C4 (sech-power form)
inline Poly soliton2_C0() {
    return build({{1, 1, {}},
                  {-1, 1, {{SymV, 1}}},
                  {2, 3, {{SymBeta, 1}, {SymB, 2}}},
                  {38, 45, {{SymBeta, 2}, {SymB, 4}}}});
}
inline Poly soliton2_C2() {
    return build({{3, 4, {{SymAlpha, 1}, {SymA, 1}}},
                  {-1, 1, {{SymBeta, 1}, {SymB, 2}}},
                  {11, 4, {{SymAlpha, 1}, {SymA, 1}, {SymBeta, 1}, {SymB, 2}}},
                  {-19, 3, {{SymBeta, 2}, {SymB, 4}}}});
}
inline Poly soliton2_C4() {
    return build({{-1, 8, {{SymAlpha, 2}, {SymA, 2}}},
                  {-43, 12, {{SymAlpha, 1}, {SymA, 1}, {SymBeta, 1}, {SymB, 2}}},
                  {19, 3, {{SymBeta, 2}, {SymB, 4}}}});
}

// first-order cnoidal profile: G0 and G2
inline Poly cnoidal1_G0() {
    return build({{4, 1, {{SymBeta, 1}, {SymB, 2}}},
                  {-8, 1, {{SymBeta, 1}, {SymB, 2}, {SymM, 1}}},
                  {-9, 1, {{SymAlpha, 1}, {SymD, 1}}},
                  {6, 1, {{SymV, 1}}},
                  {-6, 1, {}}});
}
inline Poly cnoidal1_G2() {
    return build({{12, 1, {{SymBeta, 1}, {SymB, 2}, {SymM, 1}}},
                  {-9, 1, {{SymAlpha, 1}, {SymA, 1}}}});
}

// first-order superposition profile: F0, F2, F11
inline Poly superposition1_F0() {
    return build({{9, 1, {{SymAlpha, 1}, {SymA, 1}}},
                  {-9, 1, {{SymAlpha, 1}, {SymA, 1}, {SymM, 1}}},
                  {-2, 1, {{SymBeta, 1}, {SymB, 2}}},
                  {10, 1, {{SymBeta, 1}, {SymB, 2}, {SymM, 1}}},
                  {18, 1, {{SymAlpha, 1}, {SymD, 1}}},
                  {-12, 1, {{SymV, 1}}},
                  {12, 1, {}}});
}
inline Poly superposition1_F2() {
    return build({{9, 1, {{SymAlpha, 1}, {SymA, 1}, {SymM, 1}}},
                  {-12, 1, {{SymBeta, 1}, {SymB, 2}, {SymM, 1}}}});
}
inline Poly superposition1_F11() {
    return build({{9, 1, {{SymAlpha, 1}, {SymA, 1}, {SymS, 1}}},
                  {-12, 1, {{SymBeta, 1}, {SymB, 2}, {SymS, 1}}}});
}

// second-order reduction quadratic (19/3) z^2 - (43/12) z - 1/8 in z = q/p,
// cleared to integers: 152 z^2 - 86 z - 3.
inline Poly order2_quadratic_in_pq() {
    return build({{152, 1, {{SymBeta, 2}, {SymB, 4}}},
                  {-86, 1, {{SymAlpha, 1}, {SymA, 1}, {SymBeta, 1}, {SymB, 2}}},
                  {-3, 1, {{SymAlpha, 2}, {SymA, 2}}}});
}

} // namespace paper
