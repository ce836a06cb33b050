#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdvlab/ansatz_engine.hpp"
#include "kdvlab/special_functions.hpp"
#include "support/oracles.hpp"
#include "support/paper_systems.hpp"

#include <cmath>
#include <random>

using namespace kdvlab;

namespace {

bool contains_equivalent(const std::vector<RawCondition>& raws, const Poly& printed) {
    Poly want = domain_stripped(printed);
    for (const auto& rc : raws)
        if (rc.poly == want) return true;
    return false;
}

bool list_contains_equivalent(const std::vector<Poly>& list, const Poly& printed) {
    Poly want = domain_stripped(printed);
    for (const auto& p : list)
        if (domain_stripped(p) == want) return true;
    return false;
}

double eval_profile(AnsatzFamily fam, double A, double D, double m, double u) {
    if (fam == AnsatzFamily::soliton) {
        double s = sech(u);
        return A * s * s;
    }
    auto j = jacobi_cn_sn_dn(u, m);
    if (fam == AnsatzFamily::cnoidal) return A * j.cn * j.cn + D;
    double cross = std::sqrt(m) * j.cn * j.dn;
    if (fam == AnsatzFamily::superposition_minus) cross = -cross;
    return 0.5 * A * (j.dn * j.dn + cross) + D;
}

} // namespace

TEST_CASE("profiles take their closed forms") {
    BasisExpression sol = make_ansatz(AnsatzFamily::soliton);
    REQUIRE(sol.terms().size() == 1);
    CHECK(sol.terms().begin()->first == BasisMonomial{2, 0, 0});
    CHECK(sol.terms().begin()->second == Poly::symbol(SymA));

    BasisExpression cn = make_ansatz(AnsatzFamily::cnoidal);
    CHECK(cn.terms().size() == 2);

    // the dn^2 piece is stored reduced: (A/2)(1-m) + D on the constant,
    // (A/2) m + (A/2) s on cn^2 / cn dn
    BasisExpression sup = make_ansatz(AnsatzFamily::superposition_plus);
    std::mt19937 rng(4);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    std::array<double, kSymCount> vals{};
    vals[SymA] = 1.3;
    vals[SymD] = -0.2;
    vals[SymM] = 0.6;
    vals[SymS] = std::sqrt(0.6);
    for (int i = 0; i < 10; ++i) {
        double u = ud(rng);
        CHECK(sup.evaluate(u, vals) ==
              doctest::Approx(eval_profile(AnsatzFamily::superposition_plus, 1.3, -0.2, 0.6, u))
                  .epsilon(1e-12));
    }
}

TEST_CASE("first-order solitary conditions match the printed pair") {
    ConditionSystem sys = derive_conditions(AnsatzFamily::soliton, 1);
    CHECK(sys.conditions.size() == 2);
    auto cosh_form = cosh_basis_conditions(sys);
    REQUIRE(cosh_form.size() == 2);
    CHECK(list_contains_equivalent(cosh_form, paper::soliton1_G0()));
    CHECK(list_contains_equivalent(cosh_form, paper::soliton1_G2()));
}

TEST_CASE("second-order solitary conditions match the printed triple") {
    ConditionSystem sys = derive_conditions(AnsatzFamily::soliton, 2);
    REQUIRE(sys.conditions.size() == 3);
    CHECK(contains_equivalent(sys.raw, paper::soliton2_C0()));
    CHECK(contains_equivalent(sys.raw, paper::soliton2_C2()));
    CHECK(contains_equivalent(sys.raw, paper::soliton2_C4()));
}

TEST_CASE("first-order cnoidal conditions match the printed pair") {
    ConditionSystem sys = derive_conditions(AnsatzFamily::cnoidal, 1);
    CHECK(sys.conditions.size() == 2);
    CHECK(contains_equivalent(sys.raw, paper::cnoidal1_G0()));
    CHECK(contains_equivalent(sys.raw, paper::cnoidal1_G2()));
}

TEST_CASE("first-order superposition conditions match, with the duplicate pair detected") {
    for (auto fam : {AnsatzFamily::superposition_plus, AnsatzFamily::superposition_minus}) {
        ConditionSystem sys = derive_conditions(fam, 1);
        CHECK(contains_equivalent(sys.raw, paper::superposition1_F0()));
        CHECK(contains_equivalent(sys.raw, paper::superposition1_F2()));
        CHECK(contains_equivalent(sys.raw, paper::superposition1_F11()));
        // F2 and F11 carry the same content: exactly one collapsed pair
        CHECK(sys.duplicates.size() == 1);
        CHECK(sys.conditions.size() == 2);
    }
}

TEST_CASE("order-2 systems contain the branch quadratic") {
    // z = q m / p for cnoidal, z = q / p otherwise; the (p,q)-only condition
    // is the quadratic 152 z^2 - 86 z - 3 after clearing denominators
    for (auto fam : {AnsatzFamily::soliton, AnsatzFamily::superposition_plus}) {
        ConditionSystem sys = derive_conditions(fam, 2);
        CHECK(contains_equivalent(sys.raw, paper::order2_quadratic_in_pq()));
    }
    // the cnoidal variant substitutes z = q m / p: same quadratic in (p, q m)
    ConditionSystem cn2 = derive_conditions(AnsatzFamily::cnoidal, 2);
    Poly quad_m = paper::build({{152, 1, {{paper::SymBeta, 2}, {paper::SymB, 4}, {paper::SymM, 2}}},
                                {-86, 1, {{paper::SymAlpha, 1}, {paper::SymA, 1},
                                          {paper::SymBeta, 1}, {paper::SymB, 2}, {paper::SymM, 1}}},
                                {-3, 1, {{paper::SymAlpha, 2}, {paper::SymA, 2}}}});
    CHECK(contains_equivalent(cn2.raw, quad_m));
}

TEST_CASE("independent condition counts per family and order") {
    for (auto fam : {AnsatzFamily::soliton, AnsatzFamily::cnoidal,
                     AnsatzFamily::superposition_plus}) {
        for (int order = 1; order <= 3; ++order) {
            ConditionSystem sys = derive_conditions(fam, order);
            CHECK(static_cast<int>(sys.conditions.size()) == order + 1);
        }
    }
}

TEST_CASE("velocity appears in exactly one condition, linearly") {
    for (auto fam : {AnsatzFamily::soliton, AnsatzFamily::cnoidal,
                     AnsatzFamily::superposition_plus}) {
        for (int order = 1; order <= 3; ++order) {
            ConditionSystem sys = derive_conditions(fam, order);
            int with_v = 0;
            for (const Poly& c : sys.conditions) {
                if (c.degree(SymV) > 0) {
                    ++with_v;
                    CHECK(c.degree(SymV) == 1);
                }
            }
            CHECK(with_v == 1);
        }
    }
}

TEST_CASE("residual identity: collected system equals the raw substitution numerically") {
    // Substituting the profile into the equation and evaluating the collected
    // bracket reconstruction must match a direct numeric evaluation of the
    // equation terms. The bracket's basis factor is shared, so comparing the
    // collected coefficients' zero set against the substituted residual at a
    // solution point is the meaningful check; cheaper and just as binding is
    // a reconstruction identity on the collect() output, exercised in the
    // symbolic kernel suite. Here: the numeric residual of the closed-form
    // first-order solution through the conditions is at rounding level.
    ConditionSystem sys = derive_conditions(AnsatzFamily::cnoidal, 1);
    double alpha = 0.17, beta = 0.23, m = 0.65, A = 1.4;
    double r = complete_E(m) / complete_K(m);
    std::array<double, kSymCount> vals{};
    vals[SymAlpha] = alpha;
    vals[SymBeta] = beta;
    vals[SymA] = A;
    vals[SymB] = std::sqrt(3.0 * alpha * A / (4.0 * beta * m));
    vals[SymD] = A * volume_offset_factor(AnsatzFamily::cnoidal, m);
    vals[SymV] = 1.0 + (alpha * A / (2.0 * m)) * (2.0 - m - 3.0 * r);
    vals[SymM] = m;
    vals[SymS] = std::sqrt(m);
    for (const Poly& c : sys.conditions) {
        double sum = c.evaluate(vals);
        CHECK(std::abs(sum) < 1e-12);
    }
}

TEST_CASE("volume rule reproduces the closed forms and quadrature") {
    // soliton has no offset
    CHECK_THROWS_AS(volume_constraint(AnsatzFamily::soliton), std::invalid_argument);
    CHECK_THROWS_AS(volume_offset_factor(AnsatzFamily::soliton, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(volume_offset_factor(AnsatzFamily::cnoidal, 1.5), std::domain_error);

    // frozen oracle: cnoidal offset at m = 0.9, A = 1
    CHECK(std::abs(volume_offset_factor(AnsatzFamily::cnoidal, 0.9) -
                   (-0.365026833854754)) < 1e-12);
    // superposition: D/A = -E/(2K)
    CHECK(std::abs(volume_offset_factor(AnsatzFamily::superposition_plus, 0.5) -
                   (-0.364236645261087)) < 1e-12);

    // soliton limit: |D/A| = E/K - (1-m)/m decays like 1/K(m), i.e. only
    // logarithmically in 1-m; check the monotone decay and the asymptote
    double prev = std::abs(volume_offset_factor(AnsatzFamily::cnoidal, 1.0 - 1e-2));
    for (int k = 3; k <= 9; ++k) {
        double g = std::abs(volume_offset_factor(AnsatzFamily::cnoidal, 1.0 - std::pow(10.0, -k)));
        CHECK(g < prev);
        prev = g;
    }
    double m_near = 1.0 - 1e-9;
    CHECK(std::abs(volume_offset_factor(AnsatzFamily::cnoidal, m_near)) ==
          doctest::Approx(1.0 / complete_K(m_near)).epsilon(1e-2));

    // quadrature oracle for the underlying period means
    double m = 0.73;
    double K = complete_K(m);
    double mean_cn2 = oracle::period_mean(
        [&](double u) {
            auto j = oracle::jacobi_agm(u, m);
            return j.cn * j.cn;
        },
        4.0 * K);
    double r = complete_E(m) / K;
    CHECK(std::abs(mean_cn2 - (r - (1.0 - m)) / m) < 1e-9);
    double mean_cndn = oracle::period_mean(
        [&](double u) {
            auto j = oracle::jacobi_agm(u, m);
            return j.cn * j.dn;
        },
        4.0 * K);
    CHECK(std::abs(mean_cndn) < 1e-9);
    double mean_dn2 = oracle::period_mean(
        [&](double u) {
            auto j = oracle::jacobi_agm(u, m);
            return j.dn * j.dn;
        },
        4.0 * K);
    CHECK(std::abs(mean_dn2 - r) < 1e-9);
}

TEST_CASE("mean-zero property of the offset profiles") {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> md(0.05, 0.95), ad(0.3, 2.5);
    for (int it = 0; it < 6; ++it) {
        double m = md(rng), A = ad(rng);
        for (auto fam : {AnsatzFamily::cnoidal, AnsatzFamily::superposition_plus,
                         AnsatzFamily::superposition_minus}) {
            double D = A * volume_offset_factor(fam, m);
            double mean = oracle::period_mean(
                [&](double u) { return eval_profile(fam, A, D, m, u); }, 4.0 * complete_K(m));
            CHECK(std::abs(mean) < 1e-10);
        }
    }
}

TEST_CASE("scale-free structure of every derived condition") {
    // alpha powers match A+D powers and B powers are twice the beta powers,
    // so conditions depend on (alpha A, beta B^2, alpha D) only
    for (auto fam : {AnsatzFamily::soliton, AnsatzFamily::cnoidal,
                     AnsatzFamily::superposition_minus}) {
        for (int order = 1; order <= 3; ++order) {
            for (const Poly& c : derive_conditions(fam, order).conditions) {
                for (const auto& [mono, coef] : c.terms()) {
                    CHECK(int(mono.e[SymAlpha]) == int(mono.e[SymA]) + int(mono.e[SymD]));
                    CHECK(int(mono.e[SymB]) == 2 * int(mono.e[SymBeta]));
                }
            }
        }
    }
}
