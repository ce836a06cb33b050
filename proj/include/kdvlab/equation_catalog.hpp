#pragma once

#include "kdvlab/rational.hpp"

#include <vector>

namespace kdvlab {

// One additive term of a wave equation: coeff * alpha^a * beta^b * product of
// eta-derivatives (derivative orders in `factors`, 0 meaning eta itself).
// The time-derivative term is flagged separately since everything else is
// spatial.
struct EquationTerm {
    Rational coeff;
    int alpha_pow = 0;
    int beta_pow = 0;
    std::vector<int> factors; // sorted derivative orders, empty for the eta_t term
    bool is_time = false;
};

struct EquationSpec {
    int order = 1;
    std::vector<EquationTerm> terms;
};

// Equation of the hierarchy at perturbation order 1, 2 or 3.
// Anything else is a usage error; the table is fixed data.
const EquationSpec& get_equation(int order);

} // namespace kdvlab
