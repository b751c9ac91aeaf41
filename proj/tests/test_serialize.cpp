#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <memory>
#include <nlohmann/json.hpp>
#include <random>

#include "cofil/serialize.hpp"
#include "cofil/testing.hpp"
#include "doctest.h"

using namespace cofil;
using nlohmann::json;

TEST_CASE("element JSON form") {
    auto gl = std::make_shared<FilteredHopfModel>(ModelKind::GLN, Field(2), 4, 2);
    HopfElement f = gl->add(gl->one(), gl->product(gl->generator(1), gl->det_inverse()));
    // the sum is put over the common denominator det^{-1}: x12 + det upstairs
    json j = element_to_json(*gl, f);
    CHECK(j.dump() ==
          R"({"terms":[{"coeff":"1","det":-1,"exps":{"x_1_2":1}},{"coeff":"1","det":-1,"exps":{"x_1_2":1,"x_2_1":1}},{"coeff":"1","det":-1,"exps":{"x_1_1":1,"x_2_2":1}}]})");
    CHECK(element_from_json(*gl, j) == f);

    auto ga = std::make_shared<FilteredHopfModel>(ModelKind::Ga, Field(3), 6);
    HopfElement g = ga->scale(ga->t_power(3), 2);
    CHECK(element_to_json(*ga, g).dump() == R"({"terms":[{"coeff":"2","det":0,"exps":{"t":3}}]})");
    CHECK(element_from_json(*ga, element_to_json(*ga, g)) == g);
}

TEST_CASE("element JSON rejects malformed input") {
    auto ga = std::make_shared<FilteredHopfModel>(ModelKind::Ga, Field(2), 6);
    CHECK_THROWS_AS(element_from_json(*ga, json::parse(R"({"term":[]})")), ValidationError);
    CHECK_THROWS_AS(
        element_from_json(*ga, json::parse(R"({"terms":[{"exps":{"z":1},"coeff":"1"}]})")),
        ValidationError);
    CHECK_THROWS_AS(
        element_from_json(*ga, json::parse(R"({"terms":[{"exps":{"t":1},"coeff":"1","junk":0}]})")),
        ValidationError);
}

TEST_CASE("comodule and operator-module round trips") {
    Field f2(2);
    auto m = std::make_shared<FilteredHopfModel>(ModelKind::Ga, Field(2), 8);
    std::mt19937_64 rng(6);
    for (int it = 0; it < 20; ++it) {
        auto ops = testing::random_operator_module(f2, 2 + rng() % 3, 1 + rng() % 2, rng);
        Comodule c = comodule_from_operators(m, ops, 7);
        json j = comodule_to_json(c);
        Comodule back = comodule_from_json(j);
        CHECK(back == c);
        CHECK(comodule_to_json(back).dump() == j.dump());

        json oj = operator_module_to_json(ops);
        GaOperatorModule opsback = operator_module_from_json(oj);
        CHECK(opsback.dim() == ops.dim());
        for (size_t i = 0; i < ops.psi.size(); ++i) CHECK(opsback.psi[i] == ops.psi[i]);
    }
}

TEST_CASE("coalgebra JSON emits the documented schema") {
    auto ga = std::make_shared<FilteredHopfModel>(ModelKind::Ga, Field(2), 2);
    FiniteCoalgebra c = filtration_coalgebra(*ga, 1);
    json j = coalgebra_to_json(c);
    CHECK(j["dim"] == 2);
    CHECK(j["counit"].size() == 2);
    // Delta(t) = t (x) 1 + 1 (x) t over the indexed basis {1, t}
    CHECK(j["delta"].dump() == R"([[0,0,0,"1"],[1,0,1,"1"],[1,1,0,"1"]])");
}

TEST_CASE("growth profile JSON and CSV") {
    auto m = std::make_shared<FilteredHopfModel>(ModelKind::Ga, Field(2), 40);
    LangGaFamily j1(m, 1);
    auto prof = fit_cofinite_type(dimension_sequence(j1, 12));
    json j = growth_profile_to_json(prof);
    CHECK(j["degree"] == 1);
    CHECK(j["leading"] == "1/2");
    std::string csv = growth_profile_to_csv(prof);
    CHECK(csv.substr(0, 14) == "d,dim\n0,1\n1,1\n");
}

TEST_CASE("support report JSON") {
    auto m = std::make_shared<FilteredHopfModel>(ModelKind::Ga, Field(2), 64);
    LangGaFamily j1(m, 1);
    auto rep = mock_injectivity_verdict(j1, 2);
    json j = support_report_to_json(rep);
    CHECK(j["mock_injective"] == true);
    CHECK(j["per_height"].size() == 2);
    CHECK(j["per_height"][0]["free"] == true);
}
