#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kdvlab/equation_catalog.hpp"
#include "kdvlab/json_io.hpp"

#include <json.hpp>

#include <fstream>

using namespace kdvlab;

namespace {

nlohmann::json load_golden() {
    std::ifstream is(std::string(KDVLAB_TEST_DATA) + "/equations_golden.json");
    REQUIRE(is.good());
    return nlohmann::json::parse(is);
}

} // namespace

TEST_CASE("every coefficient is pinned to the golden file") {
    auto golden = load_golden();
    for (int order = 1; order <= 3; ++order) {
        const EquationSpec& eq = get_equation(order);
        const auto& g = golden.at(std::to_string(order));
        REQUIRE(eq.terms.size() == g.size());
        for (std::size_t i = 0; i < eq.terms.size(); ++i) {
            const EquationTerm& t = eq.terms[i];
            const auto& gt = g[i];
            CHECK(rational_to_string(t.coeff) == gt.at("coefficient").get<std::string>());
            CHECK(t.alpha_pow == gt.at("alpha").get<int>());
            CHECK(t.beta_pow == gt.at("beta").get<int>());
            if (t.is_time) {
                CHECK(gt.value("time", false));
            } else {
                CHECK(t.factors == gt.at("factors").get<std::vector<int>>());
            }
        }
    }
}

TEST_CASE("term counts per order") {
    CHECK(get_equation(1).terms.size() == 4);
    CHECK(get_equation(2).terms.size() == 8);
    // all eight third-order corrections are present alongside the
    // second-order terms (eta_t and eta_x included in the count)
    CHECK(get_equation(3).terms.size() == 16);
}

TEST_CASE("unsupported order is a usage error") {
    CHECK_THROWS_AS(get_equation(0), std::invalid_argument);
    CHECK_THROWS_AS(get_equation(4), std::invalid_argument);
}

TEST_CASE("each order extends the previous term list") {
    for (int order = 2; order <= 3; ++order) {
        const auto& lo = get_equation(order - 1).terms;
        const auto& hi = get_equation(order).terms;
        REQUIRE(hi.size() > lo.size());
        for (std::size_t i = 0; i < lo.size(); ++i) {
            CHECK(lo[i].coeff == hi[i].coeff);
            CHECK(lo[i].factors == hi[i].factors);
            CHECK(lo[i].alpha_pow == hi[i].alpha_pow);
            CHECK(lo[i].beta_pow == hi[i].beta_pow);
        }
    }
}

TEST_CASE("perturbation-order bookkeeping and the transport skeleton") {
    for (int order = 1; order <= 3; ++order) {
        int zeroth = 0;
        for (const auto& t : get_equation(order).terms) {
            if (t.alpha_pow == 0 && t.beta_pow == 0) {
                ++zeroth; // eta_t and eta_x only
                CHECK(t.coeff == 1);
            } else {
                CHECK(t.alpha_pow + t.beta_pow <= order);
                CHECK(t.alpha_pow + t.beta_pow >= 1);
                // nonlinearity count tracks the alpha power
                CHECK(static_cast<int>(t.factors.size()) == t.alpha_pow + 1);
            }
        }
        CHECK(zeroth == 2);
    }
}

TEST_CASE("JSON export carries exact rationals") {
    std::string dumped = equation_to_json(get_equation(3)).dump();
    CHECK(dumped.find("\"55/3024\"") != std::string::npos);
    CHECK(dumped.find("\"1079/1440\"") != std::string::npos);
    CHECK(equation_to_json(get_equation(2)).dump() == equation_to_json(get_equation(2)).dump());
}
