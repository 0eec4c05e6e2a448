#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gblab/doubleform/double_form.hpp"
#include "gblab/geometry/chart.hpp"

namespace gblab {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 8, 1>;
using MetricFn = std::function<Mat(const Vec&)>;

Vec to_vec(std::span<const double> x);

// Finite-difference steps never exceed this fraction of the distance to a non-periodic face,
// so stencils stay inside the chart and resolve coordinate singularities at the faces.
inline constexpr double kFaceStepFraction = 0.01;

struct MetricField {
    Chart chart;
    MetricFn eval;
    double fd_step = 1e-4;  // relative to the extent of each axis
    int fd_order = 2;       // 2 or 4

    MetricField() = default;
    MetricField(Chart c, MetricFn f, double step = 1e-4, int order = 2);

    // Evaluates and checks shape and symmetry.
    Mat at(const Vec& x) const;
    double step(int axis, const Vec& x) const;
    void validate_point(const Vec& x) const;
};

// Central difference of a matrix-valued function along `axis`.
Mat central_difference(const std::function<Mat(const Vec&)>& f, const Vec& x, int axis, double h, int order);

struct Christoffel {
    int n = 0;
    std::array<double, 512> v{};  // v[(k*8 + i)*8 + j] = Gamma^k_{ij}

    double& operator()(int k, int i, int j) { return v[(k * 8 + i) * 8 + j]; }
    double operator()(int k, int i, int j) const { return v[(k * 8 + i) * 8 + j]; }
    // Matrix Gamma(d_i) with entries (k, j) = Gamma^k_{ij}.
    Mat along(int i) const;
};

Christoffel christoffel(const MetricField& m, const Vec& x);

// E with E^T g E = Id, upper triangular with positive diagonal.
Mat orthonormal_frame(const Mat& g);
Mat orthonormal_frame(const MetricField& m, const Vec& x);

// Coordinate components R_{mkij} = g_{ml} R^l_{kij}, indexed [((m*n + k)*n + i)*n + j].
std::vector<double> riemann_lowered(const MetricField& m, const Vec& x);

// (2,2) curvature form with coefficient (a,b;c,d) = <e_c, R(e_a, e_b) e_d>.
DoubleForm riemann_double_form(const MetricField& m, const Vec& x);
DoubleForm riemann_double_form(const MetricField& m, const Vec& x, const Mat& frame);
// Form slots (a,b) in form_frame, endomorphism slots (c,d) in endo_frame.
DoubleForm riemann_double_form(const MetricField& m, const Vec& x, const Mat& form_frame, const Mat& endo_frame);

// Symmetric coordinate matrix S as the (1,1) form S(e_a, e_b) in the given frame.
DoubleForm bilinear_form(const Mat& S, const Mat& frame);

// Matrix of 1-forms: omega[i] is the endomorphism assigned to the i-th coordinate vector.
struct ConnectionForm {
    std::vector<Mat> omega;
};

}  // namespace gblab
