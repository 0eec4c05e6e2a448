#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gblab/catalog/catalog.hpp"
#include "gblab/errors.hpp"
#include "gblab/invariants/boundary_values.hpp"
#include "gblab/invariants/forms.hpp"

using namespace gblab;
using std::numbers::pi;

namespace {

Vec random_interior(const Chart& c, std::mt19937_64& rng) {
    Vec x(c.dim);
    for (int i = 0; i < c.dim; ++i) {
        std::uniform_real_distribution<double> u(c.lower[i], c.upper[i]);
        double v = u(rng);
        while (!c.periodic[i] && (v <= c.lower[i] || v >= c.upper[i])) v = u(rng);
        x(i) = v;
    }
    return x;
}

bool spd(const Mat& g) {
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff())) return false;
    Eigen::SelfAdjointEigenSolver<Mat> es(g);
    return es.eigenvalues().minCoeff() > 0.0;
}

std::vector<GeometrySpec> all_defaults() {
    std::vector<GeometrySpec> out;
    for (const auto& e : catalog_list()) out.push_back(catalog_get(e.name));
    return out;
}

}  // namespace

TEST_CASE("registry listing") {
    const auto& l = catalog_list();
    CHECK(l.size() >= 12);
    auto has = [&](const char* n) { return std::any_of(l.begin(), l.end(), [&](const auto& e) { return e.name == n; }); };
    CHECK(has("catenoid"));
    CHECK(has("lens_cone"));
    CHECK(has("football"));
    const auto& again = catalog_list();
    for (std::size_t i = 0; i < l.size(); ++i) CHECK(l[i].name == again[i].name);
}

TEST_CASE("reference data") {
    CHECK(catalog_get("sphere", {{"n", "2"}, {"rho", "1"}}).chi_ref == 2.0);
    CHECK(catalog_get("sphere", {{"n", "3"}}).chi_ref == 0.0);
    const GeometrySpec f = catalog_get("football", {{"p", "3"}});
    CHECK(f.symmetry_weight.num == 1);
    CHECK(f.symmetry_weight.den == 3);
    CHECK(f.chi_ref == 2.0);
    CHECK(catalog_get("lens_cone", {{"order", "4"}}).symmetry_weight.value() == 0.25);
    CHECK(catalog_get("catenoid").data.at("total_curvature") == doctest::Approx(-4 * pi));
    CHECK(catalog_get("disk", {{"k", "2"}}).dim == 4);
    CHECK(catalog_get("edge_product").fibration->base_dim == 2);
    CHECK(catalog_get("sphere", {{"rho", "0.30"}}).params.at("rho") == "0.3");
}

TEST_CASE("registry errors") {
    CHECK_THROWS_AS(catalog_get("klein_bottle"), RegistryError);
    CHECK_THROWS_AS(catalog_get("sphere", {{"n", "9"}}), RegistryError);
    CHECK_THROWS_AS(catalog_get("sphere", {{"n", "2.5"}}), RegistryError);
    CHECK_THROWS_AS(catalog_get("sphere", {{"radius", "2"}}), RegistryError);
    CHECK_THROWS_AS(catalog_get("sphere", {{"rho", "abc"}}), RegistryError);
    CHECK_THROWS_AS(catalog_get("cone", {{"link", "S2"}}), RegistryError);
    CHECK_THROWS_AS(catalog_get("disk", {{"c", "1"}, {"rho", "3.2"}}), RegistryError);
}

TEST_CASE("metrics are positive definite on random interior points") {
    std::mt19937_64 rng(2024);
    for (const auto& g : all_defaults()) {
        INFO(g.name);
        int bad = 0;
        for (const auto& m : g.charts)
            for (int t = 0; t < 1000; ++t) bad += !spd(m.at(random_interior(m.chart, rng)));
        for (const auto& s : g.strata) {
            const MetricField tot = s.collar.total_metric();
            for (int t = 0; t < 1000; ++t) {
                Vec x = random_interior(tot.chart, rng);
                if (s.kind == StratumKind::fibered_end) x(0) = 1.0 + std::exp(std::uniform_real_distribution<double>(0, 10)(rng));
                bad += !spd(tot.at(x));
            }
        }
        CHECK(bad == 0);
    }
}

TEST_CASE("collar metrics are smooth in r") {
    std::mt19937_64 rng(7);
    for (const auto& g : all_defaults()) {
        for (const auto& s : g.strata) {
            INFO(g.name << " " << s.name);
            const CollarMetric& c = s.collar;
            double worst = 0.0;
            for (int t = 0; t < 50; ++t) {
                const Vec y = random_interior(c.boundary, rng);
                const double r = s.kind == StratumKind::fibered_end ? 2.0 + 10.0 * t
                                                                    : c.r_lower + (0.05 + 0.9 * (t + 0.5) / 50) * c.radial_extent();
                const double h = 1e-3 * std::min(1.0, r);
                const Mat d2 = (c.eval(r + h, y) - 2.0 * c.eval(r, y) + c.eval(r - h, y)) / (h * h);
                worst = std::max(worst, d2.cwiseAbs().maxCoeff());
            }
            CHECK(worst < 1e3);
        }
    }
}

TEST_CASE("weighted covers") {
    const GeometrySpec cover = catalog_get("sphere", {{"n", "2"}});
    const double vol = integrate_metric(cover.charts[0], [](const MetricField& m, const Vec& x) {
        return std::sqrt(m.at(x).determinant());
    }, 2);
    const double pf = integrate_metric(cover.charts[0], pfaffian_density, 2);
    for (int p : {2, 3, 5}) {
        const GeometrySpec f = catalog_get("football", {{"p", std::to_string(p)}});
        const double w = f.symmetry_weight.value();
        const double fv = w * integrate_metric(f.charts[0], [](const MetricField& m, const Vec& x) {
            return std::sqrt(m.at(x).determinant());
        }, 2);
        CHECK(std::abs(fv - vol / p) < 1e-8);
        CHECK(std::abs(w * integrate_metric(f.charts[0], pfaffian_density, 2) - pf / p) < 1e-8);
    }
}

TEST_CASE("catenoid total curvature") {
    const GeometrySpec c = catalog_get("catenoid");
    const double k = integrate_metric(c.charts[0], pfaffian_density, 4);
    CHECK(std::abs(k + 4 * pi) < 1e-4);
}

TEST_CASE("geometry config files") {
    clear_registered_geometries();
    const std::string text =
        "# big sphere\n"
        "schema = 1\n"
        "name = big_sphere\n"
        "builtin = sphere\n"
        "n = 2\n"
        "rho = 2.5\n";
    const CustomGeometry c = parse_geometry_config(text);
    CHECK(c.name == "big_sphere");
    CHECK(c.params.at("rho") == "2.5");
    register_geometry(c);
    const GeometrySpec g = catalog_get("big_sphere");
    CHECK(g.builtin == "sphere");
    CHECK(g.param("rho") == 2.5);
    CHECK(catalog_get("big_sphere", {{"rho", "3"}}).param("rho") == 3.0);
    CHECK(registered_geometries() == std::vector<std::string>{"big_sphere"});

    const CustomGeometry cap = parse_geometry_config(
        "schema = 1\nname = cap\nbuiltin = sphere\nchart.lower = 0, 0\nchart.upper = 1.5707963267948966, 6.283185307179586\n");
    register_geometry(cap);
    const GeometrySpec gc = catalog_get("cap");
    CHECK(gc.charts[0].chart.upper[0] == doctest::Approx(pi / 2));

    CHECK_THROWS_AS(parse_geometry_config("name = x\nbuiltin = sphere\n"), ConfigError);
    CHECK_THROWS_AS(parse_geometry_config("schema = 2\nname = x\nbuiltin = sphere\n"), ConfigError);
    CHECK_THROWS_AS(parse_geometry_config("schema = 1\nname = x\n"), ConfigError);
    CHECK_THROWS_AS(parse_geometry_config("schema = 1\nname x\n"), ConfigError);
    CHECK_THROWS_AS(parse_geometry_config("schema = 1\nname = x\nbuiltin = sphere\nn = 2\nn = 3\n"), ConfigError);
    CHECK_THROWS_AS(register_geometry(parse_geometry_config("schema = 1\nname = sphere\nbuiltin = sphere\n")), ConfigError);
    CHECK_THROWS_AS(register_geometry(parse_geometry_config("schema = 1\nname = y\nbuiltin = nothing\n")), ConfigError);
    CHECK_THROWS_AS(register_geometry(parse_geometry_config("schema = 1\nname = y\nbuiltin = sphere\nn = 12\n")), ConfigError);
    CHECK_THROWS_AS(register_geometry(parse_geometry_config("schema = 1\nname = y\nbuiltin = sphere\nchart.lower = 0\n")),
                    ConfigError);
    CHECK_THROWS_AS(load_geometry_config("/nonexistent/geometry.cfg"), ConfigError);
    clear_registered_geometries();
    CHECK_THROWS_AS(catalog_get("big_sphere"), RegistryError);
}

TEST_CASE("curvature symmetries on every catalog geometry") {
    std::mt19937_64 rng(99);
    for (const auto& g : all_defaults()) {
        for (const auto& m : g.charts) {
            if (m.chart.dim < 2) continue;
            INFO(g.name);
            const int n = m.chart.dim;
            double worst = 0.0;
            for (int t = 0; t < 100; ++t) {
                Vec x = random_interior(m.chart, rng);
                for (int i = 0; i < n; ++i)
                    if (!m.chart.periodic[i])
                        x(i) = m.chart.lower[i] + (0.05 + 0.9 * (x(i) - m.chart.lower[i]) / m.chart.extent(i)) * m.chart.extent(i);
                const std::vector<double> L = riemann_lowered(m, x);
                const DoubleForm R = riemann_double_form(m, x);
                double scale = 1.0;
                for (double v : R.coeffs()) scale = std::max(scale, std::abs(v));
                auto at = [&](int a, int b, int c, int d) { return L[((a * n + b) * n + c) * n + d]; };
                double err = 0.0;
                for (std::size_t I = 0; I < R.rows(); ++I)
                    for (std::size_t J = 0; J < R.cols(); ++J) err = std::max(err, std::abs(R.coeff(I, J) - R.coeff(J, I)));
                double lscale = 1.0;
                for (double v : L) lscale = std::max(lscale, std::abs(v));
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < n; ++c)
                            for (int d = 0; d < n; ++d) {
                                err = std::max(err, std::abs(at(a, b, c, d) + at(b, a, c, d)) / lscale);
                                err = std::max(err, std::abs(at(a, b, c, d) + at(a, b, d, c)) / lscale);
                            }
                worst = std::max(worst, err / scale);
            }
            CHECK(worst < 1e-6);
        }
    }
}
