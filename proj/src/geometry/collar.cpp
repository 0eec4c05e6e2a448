#include "gblab/geometry/collar.hpp"

#include <algorithm>
#include <cmath>

#include "gblab/errors.hpp"

namespace gblab {

void CollarMetric::validate() const {
    boundary.validate();
    if (!(r_lower < r_upper)) throw DomainError("collar: empty radial interval");
    if (epsilon != 1 && epsilon != -1) throw ConfigError("collar: epsilon must be +1 or -1");
    if (boundary_end != 1 && boundary_end != -1) throw ConfigError("collar: boundary_end must be +1 or -1");
    if (!eval) throw ConfigError("collar: missing radial metric evaluator");
}

MetricField CollarMetric::slice_metric(double r) const {
    auto f = eval;
    return MetricField(boundary, [f, r](const Vec& y) { return f(r, y); }, fd_step, fd_order);
}

MetricField CollarMetric::total_metric() const {
    Chart radial("r", {r_lower}, {r_upper}, {false});
    Chart total = Chart::product(radial, boundary, "collar(" + boundary.name + ")");
    auto f = eval;
    const int m = boundary.dim;
    return MetricField(
        total,
        [f, m](const Vec& x) {
            Mat g = Mat::Zero(m + 1, m + 1);
            g(0, 0) = 1.0;
            g.block(1, 1, m, m) = f(x(0), x.tail(m));
            return g;
        },
        fd_step, fd_order);
}

CollarMetric CollarMetric::with_epsilon(int eps) const {
    CollarMetric c = *this;
    c.epsilon = eps;
    c.validate();
    return c;
}

SliceData slice_data(const CollarMetric& c, double r, const Vec& y) {
    const double dist = std::min(r - c.r_lower, c.r_upper - r);
    if (!(dist > 1e-12 * c.radial_extent())) throw DomainError("slice_data: r too close to the ends of the radial interval");
    const double hr = std::min(c.fd_step * c.radial_extent(), kFaceStepFraction * dist);
    const MetricField m = c.slice_metric(r);
    m.validate_point(y);
    SliceData s;
    s.r = r;
    s.h = m.at(y);
    s.frame = orthonormal_frame(s.h);
    const Mat dg = central_difference([&](const Vec& t) { return c.eval(t(0), y); }, Vec::Constant(1, r), 0, hr,
                                      c.fd_order);
    const Mat II = -0.5 * c.normal_sign() * 0.5 * (dg + dg.transpose());
    s.second_fundamental = bilinear_form(II, s.frame);
    s.curvature = riemann_double_form(m, y, s.frame);
    s.volume_density = std::sqrt(s.h.determinant());
    return s;
}

void FibrationData::validate(int dim_n) const {
    if (base_dim + fiber_dim != dim_n) throw ShapeError("fibration: base and fiber dimensions do not add up");
    if (static_cast<int>(vertical_axes.size()) != fiber_dim || static_cast<int>(horizontal_axes.size()) != base_dim)
        throw ShapeError("fibration: axis split does not match dimensions");
}

}  // namespace gblab
