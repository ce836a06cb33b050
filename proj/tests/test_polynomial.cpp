#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdvlab/json_io.hpp"
#include "kdvlab/polynomial.hpp"

#include <random>

using namespace kdvlab;

namespace {

// small random polynomials over a few symbols
Poly random_poly(std::mt19937& rng, int terms = 4) {
    std::uniform_int_distribution<int> exp_dist(0, 2);
    std::uniform_int_distribution<long> coef_dist(-6, 6);
    Poly p;
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        m.e[SymAlpha] = static_cast<int8_t>(exp_dist(rng));
        m.e[SymA] = static_cast<int8_t>(exp_dist(rng));
        m.e[SymB] = static_cast<int8_t>(exp_dist(rng));
        m.e[SymM] = static_cast<int8_t>(exp_dist(rng));
        m.e[SymS] = static_cast<int8_t>(exp_dist(rng));
        long c = coef_dist(rng);
        p += Poly::monomial(m, rat(c, 1 + (t % 3)));
    }
    return p;
}

} // namespace

TEST_CASE("rational string round trip is exact") {
    Rational r = rat(19, 360) + rat(317, 288);
    CHECK(rational_from_string(rational_to_string(r)) == r);
    CHECK(rational_to_string(rat(-3, 6)) == "-1/2");
    CHECK(rational_gcd(rat(2, 3), rat(4, 9)) == rat(2, 9));
}

TEST_CASE("ring axioms hold structurally on random polynomials") {
    std::mt19937 rng(42);
    for (int it = 0; it < 50; ++it) {
        Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("s^2 folds to m at the monomial level") {
    Poly s = Poly::symbol(SymS);
    Poly m = Poly::symbol(SymM);
    CHECK(s * s == m);
    CHECK(s * s * s == m * s);
    CHECK(Poly::symbol(SymS, 4) == m * m);
}

TEST_CASE("derivative is linear and Leibniz") {
    // Leibniz in m needs s-free operands: the s^2 -> m fold makes partial
    // d/dm a non-derivation across that rewrite (the engine only ever
    // differentiates s-free conditions).
    std::mt19937 rng(7);
    auto strip_s = [](Poly p) {
        Poly out;
        for (const auto& [mono, c] : p.terms()) {
            Monomial m = mono;
            m.e[SymS] = 0;
            out += Poly::monomial(m, c);
        }
        return out;
    };
    for (int it = 0; it < 30; ++it) {
        Poly a = random_poly(rng), b = random_poly(rng);
        for (Sym s : {SymA, SymB}) {
            CHECK((a * b).derivative(s) == a.derivative(s) * b + a * b.derivative(s));
            CHECK((a + b).derivative(s) == a.derivative(s) + b.derivative(s));
        }
        Poly af = strip_s(a), bf = strip_s(b);
        CHECK((af * bf).derivative(SymM) ==
              af.derivative(SymM) * bf + af * bf.derivative(SymM));
    }
}

TEST_CASE("exact division recovers factors") {
    // division lives in the free ring: keep the operands s-free so the
    // quotient rewrite cannot change leading terms mid-division
    std::mt19937 rng(3);
    auto strip_s = [](Poly p) {
        Poly out;
        for (const auto& [mono, c] : p.terms()) {
            Monomial m = mono;
            m.e[SymS] = 0;
            out += Poly::monomial(m, c);
        }
        return out;
    };
    for (int it = 0; it < 30; ++it) {
        Poly a = strip_s(random_poly(rng)), b = strip_s(random_poly(rng));
        if (a.is_zero() || b.is_zero()) continue;
        Poly prod = a * b;
        auto q = prod.divide_exact(a);
        REQUIRE(q.has_value());
        CHECK(*q == b);
        // a non-factor generally fails
        Poly c = b + Poly::constant(1);
        auto bad = (prod + Poly::constant(1)).divide_exact(a * c);
        (void)bad; // may or may not divide; the call must not misbehave
    }
}

TEST_CASE("normal form reduces multiples to zero") {
    Poly x = Poly::symbol(SymA), y = Poly::symbol(SymB);
    Poly f = x * x + y.scaled(rat(3, 2));
    Poly g = (x + y) * f;
    CHECK(g.normal_form({f}).is_zero());
    CHECK(!f.normal_form({g}).is_zero());
}

TEST_CASE("proportionality detects rational multiples only") {
    Poly x = Poly::symbol(SymA), y = Poly::symbol(SymB);
    Poly f = x.scaled(rat(3)) - y.scaled(rat(4));
    CHECK(rationally_proportional(f, f.scaled(rat(-7, 5))));
    CHECK(!rationally_proportional(f, f * Poly::symbol(SymM)));
    CHECK(!rationally_proportional(f, x.scaled(rat(3)) - y.scaled(rat(5))));
}

TEST_CASE("domain strip removes nonvanishing factors and 1-m powers") {
    Poly one_minus_m = Poly::constant(1) - Poly::symbol(SymM);
    Poly core = Poly::symbol(SymA).scaled(rat(3)) - Poly::symbol(SymB, 2).scaled(rat(4));
    Poly dressed = core * one_minus_m * one_minus_m * Poly::symbol(SymS) *
                   Poly::symbol(SymM, 2) * Poly::symbol(SymB);
    CHECK(domain_stripped(dressed) == domain_stripped(core));
    // v and D factors must not strip: D = 0 is an admissible point
    Poly with_d = core * Poly::symbol(SymD);
    CHECK(!(domain_stripped(with_d) == domain_stripped(core)));
}

TEST_CASE("numeric evaluation agrees with rational evaluation") {
    std::mt19937 rng(11);
    std::array<Rational, kSymCount> rv{};
    std::array<double, kSymCount> dv{};
    for (int i = 0; i < kSymCount; ++i) {
        rv[static_cast<std::size_t>(i)] = rat((i * 7 + 3) % 5 + 1, i + 2);
        dv[static_cast<std::size_t>(i)] = to_double(rv[static_cast<std::size_t>(i)]);
    }
    for (int it = 0; it < 20; ++it) {
        Poly p = random_poly(rng, 6);
        double exact = to_double(p.evaluate_rational(rv));
        CHECK(p.evaluate(dv) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("JSON round trip is exact and deterministic") {
    std::mt19937 rng(5);
    Poly p = random_poly(rng, 5);
    std::string a = poly_to_json(p).dump();
    CHECK(poly_from_json_text(a) == p);
    CHECK(poly_to_json(p).dump() == a);
    // rationals appear as p/q strings
    CHECK(a.find('/') != std::string::npos);
}
