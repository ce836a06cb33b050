#include "kdvlab/equation_catalog.hpp"

#include <stdexcept>

namespace kdvlab {

namespace {

EquationTerm time_term() {
    EquationTerm t;
    t.coeff = 1;
    t.is_time = true;
    return t;
}

EquationTerm term(long num, long den, int a, int b, std::vector<int> factors) {
    EquationTerm t;
    t.coeff = rat(num, den);
    t.alpha_pow = a;
    t.beta_pow = b;
    t.factors = std::move(factors);
    return t;
}

EquationSpec build(int order) {
    EquationSpec eq;
    eq.order = order;
    eq.terms.push_back(time_term());
    eq.terms.push_back(term(1, 1, 0, 0, {1}));
    eq.terms.push_back(term(3, 2, 1, 0, {0, 1}));
    eq.terms.push_back(term(1, 6, 0, 1, {3}));
    if (order >= 2) {
        eq.terms.push_back(term(-3, 8, 2, 0, {0, 0, 1}));
        eq.terms.push_back(term(23, 24, 1, 1, {1, 2}));
        eq.terms.push_back(term(5, 12, 1, 1, {0, 3}));
        eq.terms.push_back(term(19, 360, 0, 2, {5}));
    }
    if (order >= 3) {
        eq.terms.push_back(term(3, 16, 3, 0, {0, 0, 0, 1}));
        eq.terms.push_back(term(19, 32, 2, 1, {1, 1, 1}));
        eq.terms.push_back(term(23, 16, 2, 1, {0, 1, 2}));
        eq.terms.push_back(term(5, 16, 2, 1, {0, 0, 3}));
        eq.terms.push_back(term(317, 288, 1, 2, {2, 3}));
        eq.terms.push_back(term(1079, 1440, 1, 2, {1, 4}));
        eq.terms.push_back(term(19, 80, 1, 2, {0, 5}));
        eq.terms.push_back(term(55, 3024, 0, 3, {7}));
    }
    return eq;
}

} // namespace

const EquationSpec& get_equation(int order) {
    static const EquationSpec eq1 = build(1);
    static const EquationSpec eq2 = build(2);
    static const EquationSpec eq3 = build(3);
    switch (order) {
        case 1: return eq1;
        case 2: return eq2;
        case 3: return eq3;
        default: throw std::invalid_argument("unsupported equation order (catalog ships 1-3)");
    }
}

} // namespace kdvlab
