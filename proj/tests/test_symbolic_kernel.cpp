#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdvlab/basis_expression.hpp"
#include "kdvlab/special_functions.hpp"

#include <cmath>
#include <random>

using namespace kdvlab;

namespace {

BasisExpression hyp(BasisMonomial m, Poly c) {
    return BasisExpression::term(BasisFamily::hyperbolic, m, std::move(c));
}
BasisExpression ell(BasisMonomial m, Poly c) {
    return BasisExpression::term(BasisFamily::elliptic, m, std::move(c));
}

BasisExpression random_expr(std::mt19937& rng, BasisFamily fam, int terms = 3) {
    std::uniform_int_distribution<int> a_dist(0, 3), bc_dist(0, 2), coef(-5, 5);
    BasisExpression e(fam);
    for (int t = 0; t < terms; ++t) {
        BasisMonomial m{static_cast<int8_t>(a_dist(rng)), static_cast<int8_t>(bc_dist(rng)),
                        static_cast<int8_t>(fam == BasisFamily::elliptic ? bc_dist(rng) : 0)};
        Monomial pm;
        pm.e[SymA] = static_cast<int8_t>(a_dist(rng) % 2);
        pm.e[SymM] = static_cast<int8_t>(a_dist(rng) % 2);
        e += BasisExpression::term(fam, m, Poly::monomial(pm, rat(coef(rng))));
    }
    return e;
}

std::array<double, kSymCount> sample_vals(std::mt19937& rng) {
    std::uniform_real_distribution<double> d(0.1, 0.9);
    std::array<double, kSymCount> v{};
    for (int i = 0; i < kSymCount; ++i) v[static_cast<std::size_t>(i)] = d(rng);
    v[SymS] = std::sqrt(v[SymM]);
    return v;
}

} // namespace

TEST_CASE("additive identities") {
    std::mt19937 rng(1);
    BasisExpression e = random_expr(rng, BasisFamily::elliptic);
    BasisExpression zero = BasisExpression::zero(BasisFamily::elliptic);
    CHECK(e + zero == e);
    CHECK((e + e.scaled(Poly::constant(-1))).is_zero());
    BasisExpression s2 = hyp({2, 0, 0}, Poly::constant(1));
    CHECK(s2 + s2 == hyp({2, 0, 0}, Poly::constant(2)));
}

TEST_CASE("family mismatch is a usage error") {
    BasisExpression a = hyp({2, 0, 0}, Poly::constant(1));
    BasisExpression b = ell({2, 0, 0}, Poly::constant(1));
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("degree-lowering identities applied on multiplication") {
    // sn * sn = 1 - cn^2
    BasisExpression sn = ell({0, 1, 0}, Poly::constant(1));
    BasisExpression expect = ell({0, 0, 0}, Poly::constant(1));
    expect += ell({2, 0, 0}, Poly::constant(-1));
    CHECK(sn * sn == expect);

    // dn * dn = (1-m) + m cn^2
    BasisExpression dn = ell({0, 0, 1}, Poly::constant(1));
    BasisExpression expect2 = ell({0, 0, 0}, Poly::constant(1) - Poly::symbol(SymM));
    expect2 += ell({2, 0, 0}, Poly::symbol(SymM));
    CHECK(dn * dn == expect2);

    // tanh * tanh = 1 - sech^2
    BasisExpression th = hyp({0, 1, 0}, Poly::constant(1));
    BasisExpression expect3 = hyp({0, 0, 0}, Poly::constant(1));
    expect3 += hyp({2, 0, 0}, Poly::constant(-1));
    CHECK(th * th == expect3);
}

TEST_CASE("differentiate: chain rule with symbolic B") {
    // d/dy [A sech^2] = -2 A B sech^2 tanh
    BasisExpression e = hyp({2, 0, 0}, Poly::symbol(SymA));
    BasisExpression d = e.differentiate();
    BasisExpression expect =
        hyp({2, 1, 0}, (Poly::symbol(SymA) * Poly::symbol(SymB)).scaled(rat(-2)));
    CHECK(d == expect);

    // d/dy [cn^2] = -2 B cn sn dn
    BasisExpression c2 = ell({2, 0, 0}, Poly::constant(1));
    BasisExpression expect2 = ell({1, 1, 1}, Poly::symbol(SymB).scaled(rat(-2)));
    CHECK(c2.differentiate() == expect2);
}

TEST_CASE("seven derivatives of sech^2 stay in the closed basis") {
    BasisExpression e = hyp({2, 0, 0}, Poly::constant(1));
    for (int k = 0; k < 7; ++k) e = e.differentiate();
    for (const auto& [m, p] : e.terms()) {
        CHECK(m.b <= 1);
        CHECK(m.c == 0);
    }
    CHECK(!e.is_zero());
}

TEST_CASE("product rule holds structurally") {
    std::mt19937 rng(9);
    for (auto fam : {BasisFamily::hyperbolic, BasisFamily::elliptic}) {
        for (int it = 0; it < 20; ++it) {
            BasisExpression a = random_expr(rng, fam);
            BasisExpression b = random_expr(rng, fam);
            CHECK((a * b).differentiate() == a.differentiate() * b + a * b.differentiate());
        }
    }
}

TEST_CASE("numeric consistency of mul and collect against direct evaluation") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ud(-2.0, 2.0);
    for (auto fam : {BasisFamily::hyperbolic, BasisFamily::elliptic}) {
        for (int it = 0; it < 20; ++it) {
            BasisExpression a = random_expr(rng, fam);
            BasisExpression b = random_expr(rng, fam);
            auto vals = sample_vals(rng);
            double u = ud(rng);
            double prod = (a * b).evaluate(u, vals);
            double direct = a.evaluate(u, vals) * b.evaluate(u, vals);
            CHECK(prod == doctest::Approx(direct).epsilon(1e-9));

            // collect round trip: summing monomial * coefficient reproduces
            BasisExpression rebuilt(fam);
            for (const auto& [m, c] : (a * b).collect())
                rebuilt += BasisExpression::term(fam, m, c);
            CHECK(rebuilt == a * b);
        }
    }
}

TEST_CASE("differentiate agrees with centered finite differences") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> ud(-1.5, 1.5);
    const double h = 1e-5;
    for (auto fam : {BasisFamily::hyperbolic, BasisFamily::elliptic}) {
        for (int it = 0; it < 10; ++it) {
            BasisExpression a = random_expr(rng, fam);
            auto vals = sample_vals(rng);
            double u = ud(rng);
            double B = vals[SymB];
            // d/dy with u = B*y: dy = du/B
            double fd = (a.evaluate(u + B * h, vals) - a.evaluate(u - B * h, vals)) / (2.0 * h);
            double sym = a.differentiate().evaluate(u, vals);
            CHECK(sym == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("zero expression collects to the empty list") {
    CHECK(BasisExpression::zero(BasisFamily::elliptic).collect().empty());
}
