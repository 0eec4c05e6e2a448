#include "gblab/invariants/boundary_values.hpp"

#include <cmath>
#include <numbers>

#include "gblab/errors.hpp"
#include "gblab/invariants/coefficients.hpp"
#include "gblab/invariants/forms.hpp"
#include "gblab/quadrature/quadrature.hpp"

namespace gblab {

namespace {

// int B(R^c ^ S^a) vol over the chart, S a symmetric tensor field given in coordinates.
double berezin_integral(const MetricField& m, int c, const MetricFn& S, int a, int level, const Executor& ex) {
    const int n = m.chart.dim;
    if (a + 2 * c != n) return 0.0;
    return integrate_metric(
        m,
        [c, a, S, n](const MetricField& mf, const Vec& x) {
            const Mat g = mf.at(x);
            const Mat E = orthonormal_frame(g);
            const OrientedFrameContext ctx(n, 1);
            const DoubleForm s = bilinear_form(S(x), E);
            DoubleForm t = power(s, a);
            if (c > 0) t = wedge(power(riemann_double_form(mf, x, E), c), t);
            return top_coefficient(berezin(t, ctx)) * std::sqrt(g.determinant());
        },
        level, ex);
}

}  // namespace

double integrate_metric(const MetricField& m, const PointDensity& density, int level, const Executor& ex) {
    return integrate_chart([&](std::span<const double> x) { return density(m, to_vec(x)); }, m.chart,
                           MeshSpec::for_chart(m.chart, level), ex);
}

double edge_boundary_value(const FibrationData& f, int level, const Executor& ex) {
    if (f.base_dim % 2) return 0.0;
    const double base = f.base_dim == 0 ? 1.0 : integrate_metric(f.base, pfaffian_density, level, ex);
    if (f.fiber_dim % 2 == 0) throw ShapeError("edge_boundary_value: fiber dimension must be odd");
    return base * integrate_metric(f.fiber, odd_pfaffian_density, level, ex);
}

double fibered_boundary_value(const FibrationData& f, int epsilon, int level, const Executor& ex) {
    if (f.base_dim % 2 == 0) return 0.0;
    if (epsilon != 1 && epsilon != -1) throw ConfigError("fibered_boundary_value: epsilon must be +1 or -1");
    const double scale = std::pow(2.0 * std::numbers::pi, f.fiber_dim / 2) * f.chi_fiber;
    return epsilon * scale * integrate_metric(f.base, odd_pfaffian_density, level, ex);
}

double edge_horizontal_value(const FibrationData& f, const MetricFn& gdot_base, int sigma, int level,
                             const Executor& ex) {
    const int fd = f.fiber_dim;
    const int bd = f.base_dim;
    if ((fd + bd) % 2 == 0) throw ShapeError("edge_horizontal_value: slice dimension must be odd");
    if (fd < 1 || bd < 1) throw ShapeError("edge_horizontal_value: base and fiber must be positive-dimensional");
    const int k = (fd + bd + 1) / 2;
    const MetricFn hv = [&f](const Vec& x) { return f.fiber.at(x); };
    double total = 0.0;
    for (int j = 0; j <= k - 1; ++j) {
        const double aj = coeff::to_double(coeff::binomial(k - 1, j)) * std::pow(-0.5, j) / (2 * j + 1) /
                          coeff::to_double(coeff::factorial(k - 1));
        for (int a = 0; a <= 2 * j + 1; ++a)
            for (int c = 0; c <= k - 1 - j; ++c) {
                const int ap = 2 * j + 1 - a;
                const int cp = k - 1 - j - c;
                if (a + 2 * c != fd || ap + 2 * cp != bd) continue;
                const double fv = berezin_integral(f.fiber, c, hv, a, level, ex);
                const double bv = std::pow(0.5, ap) * berezin_integral(f.base, cp, gdot_base, ap, level, ex);
                total += aj * coeff::to_double(coeff::binomial(2 * j + 1, a) * coeff::binomial(k - 1 - j, c)) * fv * bv;
            }
    }
    return -sigma * total;
}

}  // namespace gblab
