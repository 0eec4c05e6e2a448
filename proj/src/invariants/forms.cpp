#include "gblab/invariants/forms.hpp"

#include <cmath>

#include "gblab/doubleform/pfaffian.hpp"
#include "gblab/errors.hpp"
#include "gblab/invariants/coefficients.hpp"

namespace gblab {

namespace {

void require_22(const DoubleForm& R, int n, const char* where) {
    if (R.dim() != n) throw ShapeError(std::string(where) + ": curvature dimension mismatch");
    if (n >= 2 && (R.p() != 2 || R.q() != 2)) throw ShapeError(std::string(where) + ": curvature must be a (2,2) form");
}

void require_11(const DoubleForm& h, int n, const char* where) {
    if (h.dim() != n || h.p() != 1 || h.q() != 1) throw ShapeError(std::string(where) + ": expected a (1,1) form");
}

double fact(int m) { return coeff::to_double(coeff::factorial(m)); }

DoubleForm scaled(DoubleForm f, double s) { return f *= s; }

DoubleForm top_zero(int n, int p) { return DoubleForm(n, p, 0); }

// B(R^j ^ h^m); curvature powers of a 1-dimensional space are only used with j = 0.
DoubleForm berezin_mixed(const DoubleForm& R, int j, const DoubleForm& h, int m, const OrientedFrameContext& ctx) {
    const int n = ctx.n;
    if (j == 0) return berezin(power(h, m), ctx);
    if (n < 2) return top_zero(n, std::min(n, 2 * j + m));
    return berezin(wedge(power(R, j), power(h, m)), ctx);
}

}  // namespace

DoubleForm pfaffian_form(const DoubleForm& R, const OrientedFrameContext& ctx) {
    const int n = ctx.n;
    if (n % 2) throw ShapeError("pfaffian_form: dimension must be even");
    require_22(R, n, "pfaffian_form");
    const int k = n / 2;
    return scaled(berezin(power(R, k), ctx), 1.0 / fact(k));
}

DoubleForm pfaffian_form_by_matrix(const DoubleForm& R, const OrientedFrameContext& ctx) {
    const int n = ctx.n;
    if (n % 2) throw ShapeError("pfaffian_form_by_matrix: dimension must be even");
    require_22(R, n, "pfaffian_form_by_matrix");
    std::vector<std::vector<DoubleForm>> A(n, std::vector<DoubleForm>(n, DoubleForm(n, 2, 0)));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const mi::Mask J = (1u << a) | (1u << b);
            for (std::size_t I = 0; I < R.rows(); ++I) {
                A[a][b].coeff(I, 0) = R.coeff(I, mi::rank(J));
                A[b][a].coeff(I, 0) = -R.coeff(I, mi::rank(J));
            }
        }
    return scaled(pfaffian_skew(A), ctx.orientation);
}

DoubleForm odd_pfaffian_form(const DoubleForm& R, const DoubleForm& h, const OrientedFrameContext& ctx) {
    const int n = ctx.n;
    if (n % 2 == 0) throw ShapeError("odd_pfaffian_form: dimension must be odd");
    require_22(R, n, "odd_pfaffian_form");
    require_11(h, n, "odd_pfaffian_form");
    const int k = (n + 1) / 2;
    DoubleForm out = top_zero(n, n);
    for (int j = 0; j <= k - 1; ++j)
        out += scaled(berezin_mixed(R, j, h, 2 * k - 1 - 2 * j, ctx),
                      coeff::to_double(coeff::odd_pfaffian_coefficient(j, k)));
    return out;
}

DoubleForm lk_form(int j, const DoubleForm& R, const DoubleForm& h, const OrientedFrameContext& ctx) {
    const int n = ctx.n;
    if (j < 0 || 2 * j > n) throw ShapeError("lk_form: need 0 <= 2j <= n");
    require_22(R, n, "lk_form");
    require_11(h, n, "lk_form");
    return scaled(berezin_mixed(R, j, h, n - 2 * j, ctx), 1.0 / (fact(j) * fact(n - 2 * j)));
}

DoubleForm q_form(int i, const DoubleForm& R, const DoubleForm& gdot, const OrientedFrameContext& ctx) {
    const int b = ctx.n;
    if (i < 0 || 2 * i > b) throw ShapeError("q_form: need 0 <= 2i <= b");
    require_22(R, b, "q_form");
    require_11(gdot, b, "q_form");
    return scaled(berezin_mixed(R, i, gdot, b - 2 * i, ctx), 1.0 / (fact(i) * fact(b - 2 * i)));
}

DoubleForm boundary_correction_form(const DoubleForm& II, const DoubleForm& Rh, const OrientedFrameContext& ctx) {
    const int m = ctx.n;
    if (m % 2 == 0) throw ShapeError("boundary_correction_form: slice dimension must be odd");
    require_22(Rh, m, "boundary_correction_form");
    require_11(II, m, "boundary_correction_form");
    const int k = (m + 1) / 2;
    DoubleForm out = top_zero(m, m);
    for (int j = 0; j <= k - 1; ++j) {
        const double c = coeff::to_double(coeff::chern_a(j, k));
        DoubleForm t = k - 1 - j == 0 ? berezin(power(II, 2 * j + 1), ctx)
                                      : berezin(wedge(power(II, 2 * j + 1), power(Rh, k - 1 - j)), ctx);
        out += scaled(std::move(t), c);
    }
    return out;
}

DoubleForm boundary_correction_form(const SliceData& s, const OrientedFrameContext& ctx) {
    return boundary_correction_form(s.second_fundamental, s.curvature, ctx);
}

DoubleForm path_transgression_form(const PathGauge& gauge, const OrientedFrameContext& ctx) {
    const int n = gauge.n;
    if (n % 2) throw ShapeError("path_transgression_form: dimension must be even");
    const std::size_t count = gauge.samples.size();
    if (count < 9 || count % 2 == 0) throw IntegrationError("path_transgression_form: need an even number (>= 8) of s-steps");
    const int k = n / 2;
    const double h = 1.0 / static_cast<double>(count - 1);
    DoubleForm out = top_zero(n, n - 1);
    for (std::size_t i = 0; i < count; ++i) {
        const auto& s = gauge.samples[i];
        const double w = (i == 0 || i + 1 == count) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        DoubleForm t = k == 1 ? berezin(s.theta_dot_form, ctx) : berezin(wedge(s.theta_dot_form, power(s.curvature, k - 1)), ctx);
        out += scaled(std::move(t), w * h / 3.0);
    }
    return scaled(std::move(out), 1.0 / fact(k - 1));
}

DoubleForm boundary_path_transgression(const CollarMetric& c, double r, const Vec& y, int steps) {
    const MetricField g1 = c.total_metric();
    const int m = c.boundary.dim;
    const int n = m + 1;
    auto frozen = c.eval;
    const MetricField g0(
        g1.chart,
        [frozen, r, m](const Vec& x) {
            Mat g = Mat::Zero(m + 1, m + 1);
            g(0, 0) = 1.0;
            g.block(1, 1, m, m) = frozen(r, x.tail(m));
            return g;
        },
        c.fd_step, c.fd_order);
    Vec x(n);
    x(0) = r;
    x.tail(m) = y;
    const DoubleForm T = path_transgression_form(metric_path_gauge(g0, g1, x, steps), OrientedFrameContext(n, 1));
    DoubleForm out(m, m, 0);
    const mi::Mask slice = mi::full(n) & ~1u;
    out.coeff(0, 0) = c.normal_sign() * T.coeff(mi::rank(slice), 0);
    return out;
}

double cone_transgression_value(double theta, const std::vector<double>& lk_integrals, int n) {
    if (n % 2 == 0) throw ShapeError("cone_transgression_value: link dimension must be odd");
    const int k = (n + 1) / 2;
    if (static_cast<int>(lk_integrals.size()) != k) throw ShapeError("cone_transgression_value: need (n+1)/2 integrals");
    double v = 0.0;
    for (int j = 0; j < k; ++j)
        v += std::pow(theta, n - 2 * j) * coeff::to_double(coeff::c_tilde(k - 1 - j)) * lk_integrals[j];
    return v;
}

double pfaffian_density(const MetricField& m, const Vec& x) {
    const int n = m.chart.dim;
    const Mat g = m.at(x);
    const Mat E = orthonormal_frame(g);
    return top_coefficient(pfaffian_form(riemann_double_form(m, x, E), OrientedFrameContext(n, 1))) *
           std::sqrt(g.determinant());
}

double odd_pfaffian_density(const MetricField& m, const Vec& x) {
    const int n = m.chart.dim;
    const Mat g = m.at(x);
    const Mat E = orthonormal_frame(g);
    const DoubleForm R = n >= 2 ? riemann_double_form(m, x, E) : DoubleForm(n, n, n);
    return top_coefficient(odd_pfaffian_form(R, DoubleForm::metric(n), OrientedFrameContext(n, 1))) *
           std::sqrt(g.determinant());
}

double lk_density(int j, const MetricField& m, const Vec& x) {
    const int n = m.chart.dim;
    const Mat g = m.at(x);
    const DoubleForm R = j > 0 ? riemann_double_form(m, x, orthonormal_frame(g)) : DoubleForm(n, std::min(n, 2), std::min(n, 2));
    return top_coefficient(lk_form(j, R, DoubleForm::metric(n), OrientedFrameContext(n, 1))) * std::sqrt(g.determinant());
}

double boundary_correction_density(const CollarMetric& c, double r, const Vec& y) {
    const SliceData s = slice_data(c, r, y);
    return top_coefficient(boundary_correction_form(s, OrientedFrameContext(c.boundary.dim, 1))) * s.volume_density;
}

}  // namespace gblab
