#pragma once

#include <vector>

#include "gblab/doubleform/double_form.hpp"
#include "gblab/geometry/collar.hpp"
#include "gblab/geometry/metric.hpp"

namespace gblab {

// Solves d tau/ds = -1/2 g_s^{-1} (g1 - g0) tau, tau(0) = Id, with g_s = (1-s) g0 + s g1,
// by classical Runge-Kutta with a fixed step count so that tau is smooth in the base point.
Mat gauge_transport(const Mat& g0, const Mat& g1, double s, int ode_steps = 32);

// tau together with its coordinate derivatives d_i tau, integrated as one forward-sensitivity system
// from the metric derivatives dg0[i], dg1[i].
struct GaugeJet {
    Mat tau;
    std::vector<Mat> dtau;
};
GaugeJet gauge_transport_jet(const Mat& g0, const Mat& g1, const std::vector<Mat>& dg0, const std::vector<Mat>& dg1,
                             double s, int ode_steps = 32);

struct PathGaugeSample {
    double s = 0.0;
    Mat tau;
    std::vector<Mat> theta;      // theta^s(e_a) in the g0-orthonormal frame
    std::vector<Mat> theta_dot;  // d/ds of the above
    DoubleForm theta_dot_form;   // (1,2) form: (a; c,d) -> theta_dot(e_a)_{cd}
    DoubleForm curvature;        // (2,2) form of tau_s^{-1} R^{g_s} tau_s in the frame E0
};

struct PathGauge {
    int n = 0;
    Mat frame0;
    std::vector<PathGaugeSample> samples;  // steps + 1 equally spaced s-nodes (steps rounded up to even)
};

PathGauge metric_path_gauge(const MetricField& g0, const MetricField& g1, const Vec& x, int steps);

// theta^s(d_i) as coordinate endomorphisms, for i over the chart axes.
std::vector<Mat> gauge_theta_coordinates(const MetricField& g0, const MetricField& g1, const Vec& x, double s);

// phi nabla^g phi^{-1} in the g^phi-orthonormal frame, phi = diag(1, r Id_V, Id_H), r = x(0).
// omega[i] is the value on the i-th coordinate vector; `frame` is the g^phi-orthonormal frame.
struct PhiConnection {
    ConnectionForm connection;
    Mat frame;
};

PhiConnection phi_conjugated_connection(const MetricField& g, const std::vector<int>& vertical_axes, const Vec& x);
PhiConnection phi_conjugated_connection(const CollarMetric& c, const FibrationData& f, const Vec& x);

// nabla^{g1} - nabla^{g0} as omega[i](k, j) = omega(d_i)^k_j, computed by Christoffel subtraction and by
// the covariant-derivative formula g0(C omega(X)Y, Z) = 1/2[g0((D_X C)Y,Z) + g0((D_Y C)X,Z) - g0((D_Z C)X,Y)],
// C = g0^{-1} g1, D = nabla^{g0}.
struct ConnectionDifference {
    std::vector<Mat> by_christoffel;
    std::vector<Mat> by_formula;
    double discrepancy() const;
};

ConnectionDifference connection_difference(const MetricField& g0, const MetricField& g1, const Vec& x);

}  // namespace gblab
