#pragma once

#include <vector>

#include "gblab/doubleform/double_form.hpp"
#include "gblab/geometry/collar.hpp"
#include "gblab/geometry/connection.hpp"
#include "gblab/geometry/metric.hpp"

namespace gblab {

// (1/k!) B(R^k) for n = 2k.
DoubleForm pfaffian_form(const DoubleForm& R, const OrientedFrameContext& ctx);
// Combinatorial Pfaffian of the matrix of curvature 2-forms, times the orientation.
DoubleForm pfaffian_form_by_matrix(const DoubleForm& R, const OrientedFrameContext& ctx);

// sum_j (-1)^{k+j} (2k-2j-3)!! B(R^j ^ h^{2k-1-2j}) / (j! (2k-2j-1)!) for n = 2k - 1.
DoubleForm odd_pfaffian_form(const DoubleForm& R, const DoubleForm& h, const OrientedFrameContext& ctx);

// P_{j,n} = B(R^j ^ h^{n-2j}) / (j! (n-2j)!)
DoubleForm lk_form(int j, const DoubleForm& R, const DoubleForm& h, const OrientedFrameContext& ctx);

// Q_{i,b} = B(R^i ^ gdot^{b-2i}) / (i! (b-2i)!)
DoubleForm q_form(int i, const DoubleForm& R, const DoubleForm& gdot, const OrientedFrameContext& ctx);

// (1/(k-1)!) sum_j C(k-1,j) (-1)^j / (2^j (2j+1)) B(II^{2j+1} ^ R^{k-1-j}) on a (2k-1)-dimensional slice.
DoubleForm boundary_correction_form(const DoubleForm& II, const DoubleForm& Rh, const OrientedFrameContext& ctx);
DoubleForm boundary_correction_form(const SliceData& s, const OrientedFrameContext& ctx);

// (1/(k-1)!) int_0^1 B(theta_dot ^ R^{k-1}) ds, composite Simpson over the gauge samples.
DoubleForm path_transgression_form(const PathGauge& gauge, const OrientedFrameContext& ctx);

// Path transgression from the product metric dr^2 (+) g(r) frozen at r to the collar metric, at (r, y),
// restricted to the slice {r} x N and oriented by the slice normal.
DoubleForm boundary_path_transgression(const CollarMetric& c, double r, const Vec& y, int steps = 8);

// sum_j theta^{n-2j} c~((n-1)/2 - j) lk_integrals[j]
double cone_transgression_value(double theta, const std::vector<double>& lk_integrals, int n);

// Scalar densities against dx^1 ... dx^n in the chart, positive orientation.
double pfaffian_density(const MetricField& m, const Vec& x);
double odd_pfaffian_density(const MetricField& m, const Vec& x);
double lk_density(int j, const MetricField& m, const Vec& x);
double boundary_correction_density(const CollarMetric& c, double r, const Vec& y);

}  // namespace gblab
