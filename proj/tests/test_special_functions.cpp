#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdvlab/special_functions.hpp"
#include "support/oracles.hpp"

#include <cmath>
#include <random>

using namespace kdvlab;

TEST_CASE("complete integrals at the trivial endpoints") {
    constexpr double half_pi = 1.5707963267948966;
    CHECK(complete_K(0.0) == doctest::Approx(half_pi).epsilon(1e-15));
    CHECK(complete_E(0.0) == doctest::Approx(half_pi).epsilon(1e-15));
    CHECK(complete_E(1.0) == 1.0);
    CHECK_THROWS_AS(complete_K(1.0), std::domain_error);
    CHECK_THROWS_AS(complete_K(-0.1), std::domain_error);
    CHECK_THROWS_AS(complete_K(1.1), std::domain_error);
    CHECK_THROWS_AS(complete_E(1.0 + 1e-9), std::domain_error);
}

TEST_CASE("frozen oracle values at m = 0.5 and 0.9") {
    CHECK(std::abs(complete_K(0.5) - 1.854074677301372) < 1e-13);
    CHECK(std::abs(complete_E(0.5) - 1.350643881047570) < 1e-13);
    CHECK(std::abs(complete_K(0.9) - 2.578092113348173) < 1e-13);
    CHECK(std::abs(complete_E(0.9) - 1.104774732704073) < 1e-13);
}

TEST_CASE("K strictly increasing, E strictly decreasing") {
    double prevK = complete_K(0.0), prevE = complete_E(0.0);
    for (double m = 0.05; m < 0.999; m += 0.05) {
        double K = complete_K(m), E = complete_E(m);
        CHECK(K > prevK);
        CHECK(E < prevE);
        prevK = K;
        prevE = E;
    }
}

TEST_CASE("K and E match quadrature and AGM oracles") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> md(0.0, 0.999);
    for (int i = 0; i < 20; ++i) {
        double m = md(rng);
        CHECK(std::abs(complete_K(m) - oracle::K_agm(m)) < 1e-13);
        CHECK(std::abs(complete_E(m) - oracle::E_agm(m)) < 1e-13);
        CHECK(std::abs(complete_K(m) - oracle::K_quadrature(m)) < 1e-10);
        CHECK(std::abs(complete_E(m) - oracle::E_quadrature(m)) < 1e-10);
    }
}

TEST_CASE("jacobi functions at the degenerate limits") {
    for (double u : {-3.0, -1.0, 0.0, 0.4, 2.0, 5.0}) {
        JacobiTriple j0 = jacobi_cn_sn_dn(u, 0.0);
        CHECK(j0.cn == doctest::Approx(std::cos(u)).epsilon(1e-14));
        CHECK(j0.sn == doctest::Approx(std::sin(u)).epsilon(1e-14));
        CHECK(j0.dn == 1.0);
        JacobiTriple j1 = jacobi_cn_sn_dn(u, 1.0);
        CHECK(std::abs(j1.cn - sech(u)) < 1e-14);
        CHECK(std::abs(j1.sn - std::tanh(u)) < 1e-14);
        CHECK(std::abs(j1.dn - sech(u)) < 1e-14);
    }
    CHECK_THROWS_AS(jacobi_cn_sn_dn(std::nan(""), 0.5), std::domain_error);
    CHECK_THROWS_AS(jacobi_cn_sn_dn(1.0 / 0.0, 0.5), std::domain_error);
}

TEST_CASE("frozen triple at (u, m) = (1, 0.5)") {
    JacobiTriple j = jacobi_cn_sn_dn(1.0, 0.5);
    CHECK(std::abs(j.sn - 0.803001824895644) < 1e-13);
    CHECK(std::abs(j.cn - 0.595976567672141) < 1e-13);
    CHECK(std::abs(j.dn - 0.823161001631596) < 1e-13);
}

TEST_CASE("pythagorean identities to rounding across the parameter range") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> ud(-8.0, 8.0);
    std::uniform_real_distribution<double> md(0.0, 1.0);
    for (int i = 0; i < 400; ++i) {
        double u = ud(rng), m = md(rng);
        JacobiTriple j = jacobi_cn_sn_dn(u, m);
        CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1.0) < 1e-12);
        CHECK(std::abs(j.dn * j.dn - (1.0 - m) - m * j.cn * j.cn) < 1e-12);
    }
}

TEST_CASE("agreement with the AGM backward-recurrence oracle") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ud(-6.0, 6.0);
    std::uniform_real_distribution<double> md(0.01, 0.99);
    for (int i = 0; i < 20; ++i) {
        double u = ud(rng), m = md(rng);
        JacobiTriple j = jacobi_cn_sn_dn(u, m);
        oracle::Jacobi o = oracle::jacobi_agm(u, m);
        CHECK(std::abs(j.sn - o.sn) < 1e-10);
        CHECK(std::abs(j.cn - o.cn) < 1e-10);
        CHECK(std::abs(j.dn - o.dn) < 1e-10);
    }
}

TEST_CASE("periodicity cn(u + 4K) = cn(u)") {
    for (double m : {0.0, 0.2, 0.5, 0.8, 0.95, 0.99}) {
        double period = m == 0.0 ? 2.0 * M_PI : 4.0 * complete_K(m);
        for (double u : {-2.0, 0.3, 1.7}) {
            JacobiTriple a = jacobi_cn_sn_dn(u, m);
            JacobiTriple b = jacobi_cn_sn_dn(u + period, m);
            CHECK(std::abs(a.cn - b.cn) < 1e-10);
            CHECK(std::abs(a.sn - b.sn) < 1e-10);
            CHECK(std::abs(a.dn - b.dn) < 1e-10);
        }
    }
}

TEST_CASE("hyperbolic limit: cn(u, 1-1e-10) tracks sech u") {
    double worst = 0;
    for (double u = -5.0; u <= 5.0; u += 0.05) {
        JacobiTriple j = jacobi_cn_sn_dn(u, 1.0 - 1e-10);
        worst = std::max(worst, std::abs(j.cn - sech(u)));
    }
    CHECK(worst <= 1e-4);
}

TEST_CASE("centered finite difference of cn matches -sn*dn") {
    const double h = 1e-5;
    for (double m : {0.1, 0.5, 0.9}) {
        for (double u : {-2.3, -0.7, 0.0, 0.9, 3.1}) {
            JacobiTriple j = jacobi_cn_sn_dn(u, m);
            double fd =
                (jacobi_cn_sn_dn(u + h, m).cn - jacobi_cn_sn_dn(u - h, m).cn) / (2.0 * h);
            CHECK(std::abs(fd - (-j.sn * j.dn)) < 1e-6);
        }
    }
}
