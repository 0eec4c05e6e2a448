#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gblab/doubleform/double_form.hpp"
#include "gblab/geometry/metric.hpp"

namespace gblab {

// Normal-form collar dr^2 (+) g(r) over a chart of N.
struct CollarMetric {
    Chart boundary;
    double r_lower = 0.0;
    double r_upper = 1.0;
    std::function<Mat(double, const Vec&)> eval;
    // Slice orientation flag, frozen per theorem family.
    int epsilon = 1;
    // Which end of the radial interval carries the boundary or singular stratum: -1 lower, +1 upper.
    int boundary_end = -1;
    std::string family = "boundary";
    double fd_step = 1e-4;
    int fd_order = 2;

    // The slice normal is normal_sign() * d_r.
    int normal_sign() const { return epsilon * boundary_end; }
    double radial_extent() const { return r_upper - r_lower; }
    MetricField slice_metric(double r) const;
    // dr^2 (+) g(r) on (r_lower, r_upper) x N with r as the first coordinate.
    MetricField total_metric() const;
    CollarMetric with_epsilon(int eps) const;
    void validate() const;
};

struct SliceData {
    double r = 0.0;
    Mat h;        // induced metric in coordinates of N
    Mat frame;    // orthonormal frame of h
    DoubleForm second_fundamental;  // (1,1) form in the frame
    DoubleForm curvature;           // (2,2) form in the frame
    double volume_density = 0.0;    // sqrt(det h)
};

// II = -1/2 * normal_sign * d_r g(r); curvature of h(r) = g(r) at y.
SliceData slice_data(const CollarMetric& c, double r, const Vec& y);

struct FibrationData {
    int base_dim = 0;
    int fiber_dim = 0;
    bool product_split = true;
    MetricField base;   // g^B
    MetricField fiber;  // g^V at the stratum
    // Axes of N's chart that span the vertical and the horizontal directions.
    std::vector<int> vertical_axes;
    std::vector<int> horizontal_axes;
    double chi_fiber = 0.0;
    double chi_base = 0.0;

    void validate(int dim_n) const;
};

}  // namespace gblab
