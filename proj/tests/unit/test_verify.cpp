#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "gblab/errors.hpp"
#include "gblab/verify/verify.hpp"
#include "json.hpp"

using namespace gblab;
using namespace gblab::verify;

TEST_CASE("check registry") {
    std::size_t count = 0;
    for (const auto& c : check_list()) {
        CHECK(!c.instances.empty());
        for (const auto& in : c.instances) {
            CHECK(in.id == c.id);
            CHECK(std::find(c.quantities.begin(), c.quantities.end(), in.quantity) != c.quantities.end());
        }
        count += c.instances.size();
    }
    CHECK(count >= 15);
    CHECK(check_list().size() >= 14);
    CHECK_THROWS_AS(check_info("NoSuchCheck"), RegistryError);
}

TEST_CASE("closed surface check") {
    const auto res = run_check("ClosedGB", "sphere", {{"n", "2"}});
    REQUIRE(res.size() == 1);
    const CheckResult& r = res[0];
    CHECK(r.pass);
    CHECK(r.abs_residual < 1e-6);
    CHECK(r.value == doctest::Approx(2.0));
    CHECK(r.params.at("rho") == "1");
}

TEST_CASE("incompatible geometry is a configuration error") {
    CHECK_THROWS_AS(run_check("ClosedGB", "catenoid"), ConfigError);
    CHECK_THROWS_AS(run_check("ConeGB", "sphere"), ConfigError);
    CHECK_THROWS_AS(run_check("AlgebraIdentities", "sphere"), ConfigError);
    CHECK_THROWS_AS(run_check("ClosedGB", "", {{"n", "2"}}), ConfigError);
    CHECK_THROWS_AS(run_check("ClosedGB", "sphere", {{"n", "3"}}), ConfigError);
    CHECK_THROWS_AS(run_check("ClosedGB", "no_such_geometry"), RegistryError);
    RunOptions bad;
    bad.workers = 0;
    CHECK_THROWS_AS(run_check("AlgebraIdentities", "", {}, bad), ConfigError);
}

TEST_CASE("wrong reference fails without throwing") {
    clear_registered_geometries();
    register_geometry(parse_geometry_config(
        "schema = 1\nname = hemisphere\nbuiltin = sphere\nchart.lower = 0, 0\nchart.upper = 1.5707963267948966, 6.283185307179586\n"));
    const auto res = run_check("ClosedGB", "hemisphere");
    REQUIRE(res.size() == 1);
    CHECK_FALSE(res[0].pass);
    CHECK(res[0].value == doctest::Approx(1.0).epsilon(1e-6));
    clear_registered_geometries();
}

TEST_CASE("suite filter and ordering") {
    const SuiteResult s = run_suite("cone");
    CHECK(s.results.size() == check_info("ConeGB").instances.size());
    for (const auto& r : s.results) CHECK(r.id == "ConeGB");
    CHECK(s.all_passed());
    const SuiteResult again = run_suite("CONE");
    REQUIRE(again.results.size() == s.results.size());
    for (std::size_t i = 0; i < s.results.size(); ++i) CHECK(again.results[i].params == s.results[i].params);
}

TEST_CASE("tolerance override and report schema") {
    RunOptions opt;
    opt.tol = 0.25;
    const SuiteResult s = run_suite("orbifold", opt);
    for (const auto& r : s.results) CHECK(r.tolerance == 0.25);
    const auto doc = nlohmann::json::parse(to_json(s, opt));
    CHECK(doc["suite"]["tolerance_override"] == 0.25);
    CHECK(doc["suite"]["epsilon"]["boundary"] == 1);
    CHECK(doc["suite"]["epsilon"]["edge"] == -1);
    CHECK(doc["suite"]["epsilon"]["fibered"] == -1);
    CHECK_FALSE(doc["suite"].contains("workers"));
    REQUIRE(doc["checks"].size() == 3);
    for (const char* key : {"id", "geometry", "params", "value", "reference", "residual", "tolerance", "pass",
                            "convergence_csv_ref", "epsilon_notes"})
        CHECK(doc["checks"][0].contains(key));
    CHECK(doc["checks"][0]["tolerance"] == 0.25);
}

TEST_CASE("reports do not depend on the worker count") {
    RunOptions one, four;
    four.workers = 4;
    CHECK(to_json(run_suite("boundary", one), one) == to_json(run_suite("boundary", four), four));
}

TEST_CASE("slice limits carry orientation notes and tables") {
    const auto res = run_check("ConeGB", "geometric_cone", {{"link", "S1"}, {"theta", "0.5"}});
    REQUIRE(!res.empty());
    CHECK(!res[0].epsilon_notes.empty());
    REQUIRE(!res[0].tables.empty());
    CHECK(res[0].tables[0].rows.size() >= 6);
    CHECK(res[0].tables[0].to_csv().rfind("r,value\n", 0) == 0);
}

TEST_CASE("convergence study") {
    const ConvergenceTable t = converge(check_info("OrbifoldGB").instances[0], 3);
    REQUIRE(t.rows.size() == 3);
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].nodes > t.rows[i - 1].nodes);
    CHECK_THROWS_AS(converge(check_info("OrbifoldGB").instances[0], 8), ConfigError);
}

TEST_CASE("epsilon override flips the boundary identity") {
    RunOptions flip;
    flip.epsilon = -1;
    const CheckInstance& in = check_info("BoundaryGB").instances[0];
    const CheckResult r = run_instance(in, flip);
    CHECK_FALSE(r.pass);
    CHECK(r.value == doctest::Approx(-1.0).epsilon(1e-6));
}
