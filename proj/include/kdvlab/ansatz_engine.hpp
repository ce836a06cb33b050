#pragma once

#include "kdvlab/basis_expression.hpp"
#include "kdvlab/equation_catalog.hpp"

#include <string>
#include <vector>

namespace kdvlab {

enum class AnsatzFamily { soliton, cnoidal, superposition_plus, superposition_minus };

const char* family_name(AnsatzFamily f);
AnsatzFamily family_from_name(const std::string& name);
BasisFamily basis_family(AnsatzFamily f);
bool is_elliptic(AnsatzFamily f);

// The assumed traveling-wave profile eta(y):
//   soliton            A * sech^2(By)
//   cnoidal            A * cn^2(By,m) + D
//   superposition_+/-  (A/2) * [dn^2 +- s*cn*dn] + D, with s the formal sqrt(m)
BasisExpression make_ansatz(AnsatzFamily f);

struct RawCondition {
    BasisMonomial source; // basis monomial of the bracket the coefficient came from
    Poly poly;            // domain-stripped, content- and sign-normalized
};

// Coefficient conditions obtained by substituting the ansatz into the
// equation (with eta_t = -v * eta_y), collecting on the canonical basis and
// requiring each independent coefficient to vanish.
struct ConditionSystem {
    AnsatzFamily family = AnsatzFamily::soliton;
    int order = 1;
    std::vector<Sym> unknowns;

    // Bracket coefficients after stripping the common basis monomial and the
    // symbol-monomial factor shared by the whole system; pairwise scales are
    // preserved, which the cosh-power recombination below relies on.
    std::vector<std::pair<BasisMonomial, Poly>> bracket;

    // Per-coefficient normal forms, parallel to `bracket`.
    std::vector<RawCondition> raw;

    // Index pairs in `raw` that turned out identical (proportional
    // coefficients such as the F2/F11 pair collapse here).
    std::vector<std::pair<int, int>> duplicates;

    // Final independent condition set: duplicates removed, then any condition
    // reducible to zero modulo the others dropped.
    std::vector<Poly> conditions;

    bool has_volume_constraint = false;
};

ConditionSystem derive_conditions(AnsatzFamily family, int order);

// Periodic families fix the offset D by a zero period-mean requirement:
//   cnoidal        D = -(A/m) * [E/K + m - 1]
//   superposition  D = -(A/2) * E/K
// Returned value is D/A at the given elliptic parameter. The soliton family
// has no offset and is a usage error here.
struct VolumeRule {
    AnsatzFamily family;
    std::string formula;
};
VolumeRule volume_constraint(AnsatzFamily family);
double volume_offset_factor(AnsatzFamily family, double m);

// Hyperbolic brackets rewritten on powers of cosh(2By): multiplies through by
// the top cosh power and expands cosh^2 = (1 + cosh(2By))/2. This matches the
// alternative presentation of the first-order soliton conditions.
std::vector<Poly> cosh_basis_conditions(const ConditionSystem& system);

} // namespace kdvlab
