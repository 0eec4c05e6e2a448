#include "gblab/geometry/connection.hpp"

#include <algorithm>
#include <cmath>

#include "gblab/errors.hpp"

namespace gblab {

namespace {

Mat spd_solve(const Mat& A, const Mat& B) {
    Eigen::LLT<Mat> llt(A);
    if (llt.info() != Eigen::Success) throw MetricError("metric path leaves the positive-definite cone");
    return llt.solve(B);
}

MetricField interpolated(const MetricField& g0, const MetricField& g1, double s) {
    auto e0 = g0.eval;
    auto e1 = g1.eval;
    return MetricField(g0.chart, [e0, e1, s](const Vec& y) { return Mat((1.0 - s) * e0(y) + s * e1(y)); }, g0.fd_step,
                       g0.fd_order);
}

std::vector<Mat> to_frame(const std::vector<Mat>& coord, const Mat& E) {
    const int n = static_cast<int>(E.rows());
    const Mat Einv = E.inverse();
    std::vector<Mat> out(n, Mat::Zero(n, n));
    for (int i = 0; i < n; ++i) {
        const Mat T = Einv * coord[i] * E;
        for (int a = 0; a < n; ++a) out[a] += E(i, a) * T;
    }
    return out;
}

DoubleForm one_two_form(const std::vector<Mat>& A) {
    const int n = static_cast<int>(A.size());
    DoubleForm F(n, 1, std::min(2, n));
    if (n < 2) return F;
    const auto& pairs = mi::subsets(n, 2);
    for (int a = 0; a < n; ++a)
        for (std::size_t J = 0; J < pairs.size(); ++J) {
            int c = -1, d = -1;
            for (int bit = 0; bit < n; ++bit)
                if (pairs[J] & (1u << bit)) (c < 0 ? c : d) = bit;
            F.coeff(a, J) = A[a](c, d);
        }
    return F;
}

}  // namespace

Mat gauge_transport(const Mat& g0, const Mat& g1, double s, int ode_steps) {
    const auto n = g0.rows();
    const Mat gd = g1 - g0;
    auto rhs = [&](double sigma, const Mat& tau) { return Mat(-0.5 * spd_solve(g0 + sigma * gd, gd * tau)); };
    Mat tau = Mat::Identity(n, n);
    const double ds = s / ode_steps;
    for (int k = 0; k < ode_steps; ++k) {
        const double s0 = ds * k;
        const Mat k1 = rhs(s0, tau);
        const Mat k2 = rhs(s0 + 0.5 * ds, tau + 0.5 * ds * k1);
        const Mat k3 = rhs(s0 + 0.5 * ds, tau + 0.5 * ds * k2);
        const Mat k4 = rhs(s0 + ds, tau + ds * k3);
        tau += (ds / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return tau;
}

GaugeJet gauge_transport_jet(const Mat& g0, const Mat& g1, const std::vector<Mat>& dg0, const std::vector<Mat>& dg1,
                             double s, int ode_steps) {
    const auto n = g0.rows();
    const std::size_t m = dg0.size();
    const Mat gd = g1 - g0;
    // State: tau and d_i tau. With M = g_s^{-1} gdot,
    //   tau' = -1/2 M tau,   (d_i tau)' = -1/2 (d_i M tau + M d_i tau),   d_i M = g_s^{-1} (d_i gdot - d_i g_s M).
    auto rhs = [&](double sigma, const std::vector<Mat>& y) {
        const Mat gs = g0 + sigma * gd;
        Eigen::LLT<Mat> llt(gs);
        if (llt.info() != Eigen::Success) throw MetricError("metric path leaves the positive-definite cone");
        const Mat M = llt.solve(gd);
        std::vector<Mat> out(m + 1);
        out[0] = -0.5 * M * y[0];
        for (std::size_t i = 0; i < m; ++i) {
            const Mat dgd = dg1[i] - dg0[i];
            const Mat dgs = dg0[i] + sigma * dgd;
            const Mat dM = llt.solve(Mat(dgd - dgs * M));
            out[i + 1] = -0.5 * (dM * y[0] + M * y[i + 1]);
        }
        return out;
    };
    auto axpy = [](const std::vector<Mat>& y, double h, const std::vector<Mat>& k) {
        std::vector<Mat> r(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) r[i] = y[i] + h * k[i];
        return r;
    };
    std::vector<Mat> y(m + 1, Mat::Zero(n, n));
    y[0] = Mat::Identity(n, n);
    const double ds = s / ode_steps;
    for (int step = 0; step < ode_steps; ++step) {
        const double s0 = ds * step;
        const auto k1 = rhs(s0, y);
        const auto k2 = rhs(s0 + 0.5 * ds, axpy(y, 0.5 * ds, k1));
        const auto k3 = rhs(s0 + 0.5 * ds, axpy(y, 0.5 * ds, k2));
        const auto k4 = rhs(s0 + ds, axpy(y, ds, k3));
        for (std::size_t i = 0; i <= m; ++i) y[i] += (ds / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    GaugeJet out;
    out.tau = y[0];
    out.dtau.assign(y.begin() + 1, y.end());
    return out;
}

std::vector<Mat> gauge_theta_coordinates(const MetricField& g0, const MetricField& g1, const Vec& x, double s) {
    if (g0.chart.dim != g1.chart.dim) throw ShapeError("metric path: charts differ in dimension");
    const int n = g0.chart.dim;
    const MetricField gs = interpolated(g0, g1, s);
    const Christoffel Gs = christoffel(gs, x);
    const Christoffel G0 = christoffel(g0, x);
    std::vector<Mat> dg0(n), dg1(n);
    for (int i = 0; i < n; ++i) {
        const double h = g0.step(i, x);
        dg0[i] = central_difference([&](const Vec& y) { return g0.at(y); }, x, i, h, g0.fd_order);
        dg1[i] = central_difference([&](const Vec& y) { return g1.at(y); }, x, i, h, g0.fd_order);
    }
    const GaugeJet jet = gauge_transport_jet(g0.at(x), g1.at(x), dg0, dg1, s);
    const Mat tinv = jet.tau.inverse();
    std::vector<Mat> theta(n);
    for (int i = 0; i < n; ++i) theta[i] = tinv * jet.dtau[i] + tinv * Gs.along(i) * jet.tau - G0.along(i);
    return theta;
}

PathGauge metric_path_gauge(const MetricField& g0, const MetricField& g1, const Vec& x, int steps) {
    if (steps < 8) throw IntegrationError("metric_path_gauge: at least 8 s-steps required");
    if (steps % 2) ++steps;
    g0.validate_point(x);
    const int n = g0.chart.dim;
    PathGauge out;
    out.n = n;
    out.frame0 = orthonormal_frame(g0.at(x));
    const double delta = 1e-3;
    for (int k = 0; k <= steps; ++k) {
        const double s = static_cast<double>(k) / steps;
        PathGaugeSample smp;
        smp.s = s;
        smp.tau = gauge_transport(g0.at(x), g1.at(x), s);
        smp.theta = to_frame(gauge_theta_coordinates(g0, g1, x, s), out.frame0);
        const auto tp = to_frame(gauge_theta_coordinates(g0, g1, x, s + delta), out.frame0);
        const auto tm = to_frame(gauge_theta_coordinates(g0, g1, x, s - delta), out.frame0);
        smp.theta_dot.resize(n);
        for (int a = 0; a < n; ++a) smp.theta_dot[a] = (tp[a] - tm[a]) / (2.0 * delta);
        smp.theta_dot_form = one_two_form(smp.theta_dot);
        smp.curvature = riemann_double_form(interpolated(g0, g1, s), x, out.frame0, smp.tau * out.frame0);
        out.samples.push_back(std::move(smp));
    }
    return out;
}

PhiConnection phi_conjugated_connection(const MetricField& g, const std::vector<int>& vertical_axes, const Vec& x) {
    g.validate_point(x);
    const int n = g.chart.dim;
    if (x(0) == 0.0) throw DomainError("phi conjugation at r = 0 is defined only as a limit");
    for (int a : vertical_axes)
        if (a <= 0 || a >= n) throw ShapeError("phi conjugation: vertical axis out of range");
    // frame of g^phi = phi^-1 g phi^-1 is smooth up to r = 0; only it is differenced
    auto frame_phi = [&](const Vec& y) {
        Vec phi = Vec::Ones(n);
        for (int a : vertical_axes) phi(a) = y(0);
        const Mat gy = g.at(y);
        Mat gphi(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gphi(i, j) = gy(i, j) / (phi(i) * phi(j));
        return Mat(orthonormal_frame(gphi));
    };
    Vec inv = Vec::Ones(n);
    for (int a : vertical_axes) inv(a) = 1.0 / x(0);
    const Christoffel G = christoffel(g, x);
    const Mat P = frame_phi(x);
    const Mat F = inv.asDiagonal() * P;
    const Mat Finv = F.inverse();
    PhiConnection out;
    out.connection.omega.resize(n);
    for (int i = 0; i < n; ++i) {
        Mat dF = inv.asDiagonal() * central_difference(frame_phi, x, i, g.step(i, x), g.fd_order);
        if (i == 0)
            for (int a : vertical_axes) dF.row(a) -= P.row(a) / (x(0) * x(0));
        out.connection.omega[i] = Finv * (dF + G.along(i) * F);
    }
    Vec phi = Vec::Ones(n);
    for (int a : vertical_axes) phi(a) = x(0);
    out.frame = phi.asDiagonal() * F;
    return out;
}

PhiConnection phi_conjugated_connection(const CollarMetric& c, const FibrationData& f, const Vec& x) {
    f.validate(c.boundary.dim);
    std::vector<int> vert;
    for (int a : f.vertical_axes) vert.push_back(a + 1);
    return phi_conjugated_connection(c.total_metric(), vert, x);
}

double ConnectionDifference::discrepancy() const {
    double m = 0.0;
    for (std::size_t i = 0; i < by_christoffel.size(); ++i)
        m = std::max(m, (by_christoffel[i] - by_formula[i]).cwiseAbs().maxCoeff());
    return m;
}

ConnectionDifference connection_difference(const MetricField& g0, const MetricField& g1, const Vec& x) {
    if (g0.chart.dim != g1.chart.dim) throw ShapeError("connection_difference: charts differ in dimension");
    const int n = g0.chart.dim;
    const Christoffel G0 = christoffel(g0, x);
    const Christoffel G1 = christoffel(g1, x);
    ConnectionDifference out;
    for (int i = 0; i < n; ++i) out.by_christoffel.push_back(G1.along(i) - G0.along(i));

    auto C_at = [&](const Vec& y) { return spd_solve(g0.at(y), g1.at(y)); };
    const Mat g0x = g0.at(x);
    const Mat g1x = g1.at(x);
    const Mat C = C_at(x);
    // (D_i C)^a_b = d_i C^a_b + G0^a_{im} C^m_b - G0^m_{ib} C^a_m
    std::vector<Mat> DC(n);
    for (int i = 0; i < n; ++i) {
        const Mat dC = central_difference(C_at, x, i, g0.step(i, x), g0.fd_order);
        const Mat Gi = G0.along(i);
        DC[i] = dC + Gi * C - C * Gi;
    }
    // g0((D_Z C)X, Y) with X = d_i, Y = d_j, Z = d_l  ->  (g0 * D_l C)(j, i)
    std::vector<Mat> gDC(n);
    for (int l = 0; l < n; ++l) gDC[l] = g0x * DC[l];
    out.by_formula.assign(n, Mat::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec v(n);
            for (int l = 0; l < n; ++l) v(l) = 0.5 * (gDC[i](l, j) + gDC[j](l, i) - gDC[l](j, i));
            const Vec w = spd_solve(g1x, v);
            for (int k = 0; k < n; ++k) out.by_formula[i](k, j) = w(k);
        }
    return out;
}

}  // namespace gblab
