#include <cmath>
#include <cstring>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "gblab/errors.hpp"
#include "gblab/quadrature/quadrature.hpp"

using namespace gblab;
using std::numbers::pi;

namespace {

Chart s2_chart() { return Chart("s2", {0.0, 0.0}, {pi, 2 * pi}, {false, true}); }
Chart s3_chart() { return Chart("s3", {0.0, 0.0, 0.0}, {pi, pi, 2 * pi}, {false, false, true}); }

double s2_density(std::span<const double> x) { return std::sin(x[0]); }
double s3_density(std::span<const double> x) { return std::sin(x[0]) * std::sin(x[0]) * std::sin(x[1]); }

}  // namespace

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
    for (int n = 1; n <= 20; ++n) {
        const AxisRule r = gauss_legendre(n);
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CHECK(std::abs(s - exact) < 1e-13);
        }
    }
}

TEST_CASE("constant over a periodic interval") {
    const Chart c("circle", {0.0}, {2 * pi}, {true});
    CHECK(integrate_chart([](std::span<const double>) { return 1.0; }, c, MeshSpec::for_chart(c, 1)) ==
          doctest::Approx(2 * pi).epsilon(1e-15));
}

TEST_CASE("sphere volumes") {
    const Chart c2 = s2_chart();
    CHECK(std::abs(integrate_chart(s2_density, c2, MeshSpec::for_chart(c2, 4)) - 4 * pi) < 1e-8);
    const Chart c3 = s3_chart();
    CHECK(std::abs(integrate_chart(s3_density, c3, MeshSpec::for_chart(c3, 3)) - 2 * pi * pi) < 1e-8);
}

TEST_CASE("mesh invariants") {
    const Chart c2 = s2_chart();
    CHECK_THROWS_AS(MeshSpec::for_chart(c2, 1, 3), DomainError);
    CHECK_THROWS_AS(MeshSpec::for_chart(c2, 8), DomainError);
    const MeshSpec m = MeshSpec::for_chart(c2, 2);
    CHECK(m.node_counts() == std::vector<int>{16, 16});
    CHECK(m.total_nodes() == 256);
}

TEST_CASE("evaluator failures carry node coordinates") {
    const Chart c2 = s2_chart();
    try {
        integrate_chart([](std::span<const double> x) -> double {
            if (x[0] > 3.0) throw std::runtime_error("boom");
            return 1.0;
        }, c2, MeshSpec::for_chart(c2, 1), Executor(3));
        FAIL("expected an exception");
    } catch (const IntegrationError& e) {
        CHECK(std::string(e.what()).find("node (") != std::string::npos);
        CHECK(std::string(e.what()).find("boom") != std::string::npos);
    }
}

TEST_CASE("fiber integrals") {
    const Chart box("box", {0.0}, {1.0}, {false});
    const Chart box2("box2", {0.0}, {2.0}, {false});
    const MeshSpec m = MeshSpec::for_chart(box, 1);
    const MeshSpec m2 = MeshSpec::for_chart(box2, 1);
    auto a = [](std::span<const double> x) { return x[0]; };
    CHECK(integrate_fibers(box, m, box2, m2, a, a) == doctest::Approx(0.5 * 2.0));
    const Chart c2 = s2_chart();
    const Chart s1("s1", {0.0}, {2 * pi}, {true});
    const MeshSpec ms2 = MeshSpec::for_chart(c2, 3);
    const MeshSpec ms1 = MeshSpec::for_chart(s1, 1);
    const double prod = integrate_fibers(c2, ms2, s1, ms1, s2_density, [](std::span<const double>) { return 1.0; });
    CHECK(std::abs(prod - 8 * pi * pi) < 1e-9);
    auto F = [](std::span<const double> b, std::span<const double> f) { return std::sin(b[0]) * (1.0 + 0.0 * f[0]); };
    const double iter = integrate_fibers(c2, ms2, s1, ms1, F);
    const Chart prodc = Chart::product(c2, s1);
    const double whole =
        integrate_chart([](std::span<const double> x) { return std::sin(x[0]); }, prodc, MeshSpec::for_chart(prodc, 3));
    CHECK(std::abs(iter - whole) < 1e-9);
    CHECK(std::abs(iter - prod) < 1e-9);
}

TEST_CASE("integration is bit-identical across worker counts") {
    const Chart c3 = s3_chart();
    const MeshSpec m = MeshSpec::for_chart(c3, 3);
    auto f = [](std::span<const double> x) { return s3_density(x) * (1.0 + std::cos(x[2]) * std::sin(3 * x[0])); };
    const double v1 = integrate_chart(f, c3, m, Executor(1));
    for (int w : {2, 8}) {
        const double vw = integrate_chart(f, c3, m, Executor(w));
        CHECK(std::memcmp(&v1, &vw, sizeof v1) == 0);
    }
}

TEST_CASE("refine_until") {
    const Chart c1("circle", {0.0}, {2 * pi}, {true});
    auto eval = [&](int l) {
        const MeshSpec m = MeshSpec::for_chart(c1, l, 4);
        return LevelSample{integrate_chart([](std::span<const double> x) { return std::exp(std::sin(x[0])); }, c1, m),
                           m.total_nodes()};
    };
    const RefineResult r = refine_until(eval, 1e-13, 6);
    CHECK(r.converged);
    CHECK(std::abs(r.value - 2 * pi * std::cyl_bessel_i(0.0, 1.0)) < 1e-13);
    for (std::size_t i = 1; i < r.table.rows.size(); ++i) CHECK(r.table.rows[i].level > r.table.rows[i - 1].level);
    bool fast = false;
    for (const auto& row : r.table.rows)
        if (row.order > 4) fast = true;
    CHECK(fast);

    const Chart c2 = s2_chart();
    std::vector<double> errors;
    for (int l = 1; l <= 3; ++l)
        errors.push_back(std::abs(integrate_chart(s2_density, c2, MeshSpec::for_chart(c2, l, 4)) - 4 * pi));
    for (std::size_t i = 1; i < errors.size(); ++i) CHECK(errors[i] <= errors[i - 1] / 4.0 + 1e-15);

    auto flat = [&](int l) { return LevelSample{1.0, static_cast<std::size_t>(l)}; };
    const RefineResult once = refine_until(flat, 1e-12, 7);
    CHECK(once.converged);
    CHECK(once.table.rows.size() == 2);
    CHECK_THROWS_AS(refine_until(flat, 1e-12, 8), DomainError);
    const std::string csv = once.table.to_csv();
    CHECK(csv.rfind("level,nodes,value,diff,order\n", 0) == 0);
}

TEST_CASE("r-limit extrapolation") {
    std::vector<LimitSample> lin, quartic;
    for (double r : geometric_schedule(0.4)) {
        lin.push_back({r, 3.0 + 2.0 * r});
        quartic.push_back({r, 1.0 + r * r + r * r * r * r});
    }
    CHECK(std::abs(r_limit_extrapolate(lin).value - 3.0) < 1e-12);
    CHECK(std::abs(r_limit_extrapolate(quartic, 4).value - 1.0) < 1e-8);
    CHECK_THROWS_AS(r_limit_extrapolate(std::span(lin).first(4), 3), DomainError);
    std::vector<LimitSample> bad{{1.0, 1.0}, {0.9, 1.0}, {0.8, 1.0}, {0.7, 1.0}, {0.6, 1.0}};
    CHECK_THROWS_AS(r_limit_extrapolate(bad, 2), DomainError);
    const Extrapolation e = r_limit_extrapolate(lin, 3);
    CHECK(e.samples.size() == 6);
    CHECK_FALSE(e.ill_conditioned);
}
