#pragma once

#include <functional>

#include "gblab/geometry/collar.hpp"
#include "gblab/quadrature/executor.hpp"

namespace gblab {

using PointDensity = std::function<double(const MetricField&, const Vec&)>;

// Integral over the chart of a density evaluated pointwise on the metric.
double integrate_metric(const MetricField& m, const PointDensity& density, int level, const Executor& ex = Executor{});

// int_B Pf(g^B) * int_F Pf^odd(g^V); zero when the base dimension is odd. A 0-dimensional base counts as 1.
double edge_boundary_value(const FibrationData& f, int level, const Executor& ex = Executor{});

// epsilon * (2 pi)^{f/2} chi(F) int_B Pf^odd(g^B); zero when the base dimension is even.
double fibered_boundary_value(const FibrationData& f, int epsilon, int level, const Executor& ex = Executor{});

// r -> 0 limit of the slice correction integral for dr^2 (+) r^2 g^V (+) g^B(r), where gdot_base = d_r g^B at 0,
// with the slice normal sigma * d_r:
//   -sigma sum_j a_j sum_{a,c} C(2j+1,a) C(k-1-j,c) int_F B(R_V^c h_V^a) 2^{-a'} int_B B(R_B^{c'} gdot^{a'}),
// a + 2c = f, a' + 2c' = b, a_j = C(k-1,j) (-1)^j / ((k-1)! 2^j (2j+1)).
double edge_horizontal_value(const FibrationData& f, const MetricFn& gdot_base, int sigma, int level,
                             const Executor& ex = Executor{});

}  // namespace gblab
