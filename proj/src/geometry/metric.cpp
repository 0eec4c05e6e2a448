#include "gblab/geometry/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gblab/errors.hpp"

namespace gblab {

Vec to_vec(std::span<const double> x) {
    Vec v(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
    return v;
}

MetricField::MetricField(Chart c, MetricFn f, double step, int order)
    : chart(std::move(c)), eval(std::move(f)), fd_step(step), fd_order(order) {
    chart.validate();
    if (order != 2 && order != 4) throw ConfigError("fd_order must be 2 or 4");
    if (!(step > 0.0 && step < 0.1)) throw ConfigError("fd_step must lie in (0, 0.1)");
}

void MetricField::validate_point(const Vec& x) const {
    if (x.size() != chart.dim) throw ShapeError("point dimension does not match chart '" + chart.name + "'");
    if (!chart.interior(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())))) {
        std::ostringstream os;
        os << "point outside the interior of chart '" << chart.name << "': (" << x.transpose() << ")";
        throw DomainError(os.str());
    }
}

Mat MetricField::at(const Vec& x) const {
    Mat g = eval(x);
    const int n = chart.dim;
    if (g.rows() != n || g.cols() != n) throw ShapeError("metric evaluator returned a matrix of the wrong size");
    if (!g.allFinite()) throw MetricError("metric evaluator returned non-finite entries");
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw MetricError("metric sample is not symmetric");
    return g;
}

double MetricField::step(int axis, const Vec& x) const {
    const double nominal = fd_step * chart.extent(axis);
    if (chart.periodic[axis]) return nominal;
    const double d = chart.face_distance(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), axis);
    if (!(d > 0.0)) throw DomainError("finite-difference stencil leaves chart '" + chart.name + "'");
    return std::min(nominal, kFaceStepFraction * d);
}

Mat central_difference(const std::function<Mat(const Vec&)>& f, const Vec& x, int axis, double h, int order) {
    Vec xp = x, xm = x;
    xp(axis) += h;
    xm(axis) -= h;
    if (order == 2) return (f(xp) - f(xm)) / (2.0 * h);
    Vec xpp = x, xmm = x;
    xpp(axis) += 2.0 * h;
    xmm(axis) -= 2.0 * h;
    return (8.0 * (f(xp) - f(xm)) - (f(xpp) - f(xmm))) / (12.0 * h);
}

Mat Christoffel::along(int i) const {
    Mat G(n, n);
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) G(k, j) = (*this)(k, i, j);
    return G;
}

Christoffel christoffel(const MetricField& m, const Vec& x) {
    m.validate_point(x);
    const int n = m.chart.dim;
    const Mat g = m.at(x);
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) throw MetricError("metric sample is not positive-definite");
    const Mat ginv = llt.solve(Mat::Identity(n, n));
    const auto f = [&](const Vec& y) { return m.at(y); };
    std::array<Mat, 8> dg;
    for (int a = 0; a < n; ++a) dg[a] = central_difference(f, x, a, m.step(a, x), m.fd_order);
    Christoffel G;
    G.n = n;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                double s = 0.0;
                for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
                G(k, i, j) = 0.5 * s;
                G(k, j, i) = 0.5 * s;
            }
    return G;
}

Mat orthonormal_frame(const Mat& g) {
    const auto n = g.rows();
    Eigen::LLT<Mat> llt(g);
    if (llt.info() != Eigen::Success) throw MetricError("metric sample is not positive-definite");
    Mat U = llt.matrixU();
    return U.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
}

Mat orthonormal_frame(const MetricField& m, const Vec& x) {
    m.validate_point(x);
    return orthonormal_frame(m.at(x));
}

std::vector<double> riemann_lowered(const MetricField& m, const Vec& x) {
    const int n = m.chart.dim;
    const Christoffel G = christoffel(m, x);
    const Mat g = m.at(x);
    // dG[i] holds d_i Gamma as a Christoffel table.
    std::array<Christoffel, 8> dG;
    for (int i = 0; i < n; ++i) {
        const double h = m.step(i, x);
        auto gam = [&](double t) {
            Vec y = x;
            y(i) += t;
            return christoffel(m, y);
        };
        dG[i].n = n;
        if (m.fd_order == 2) {
            const Christoffel p = gam(h), q = gam(-h);
            for (std::size_t t = 0; t < 512; ++t) dG[i].v[t] = (p.v[t] - q.v[t]) / (2.0 * h);
        } else {
            const Christoffel p = gam(h), q = gam(-h), pp = gam(2 * h), qq = gam(-2 * h);
            for (std::size_t t = 0; t < 512; ++t)
                dG[i].v[t] = (8.0 * (p.v[t] - q.v[t]) - (pp.v[t] - qq.v[t])) / (12.0 * h);
        }
    }
    // R^l_{kij} = d_i G^l_{jk} - d_j G^l_{ik} + G^l_{im} G^m_{jk} - G^l_{jm} G^m_{ik}
    std::vector<double> up(static_cast<std::size_t>(n * n * n * n), 0.0);
    auto idx = [n](int a, int b, int c, int d) { return static_cast<std::size_t>(((a * n + b) * n + c) * n + d); };
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = dG[i](l, j, k) - dG[j](l, i, k);
                    for (int mm = 0; mm < n; ++mm) s += G(l, i, mm) * G(mm, j, k) - G(l, j, mm) * G(mm, i, k);
                    up[idx(l, k, i, j)] = s;
                }
    std::vector<double> low(up.size(), 0.0);
    for (int mm = 0; mm < n; ++mm)
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double s = 0.0;
                    for (int l = 0; l < n; ++l) s += g(mm, l) * up[idx(l, k, i, j)];
                    low[idx(mm, k, i, j)] = s;
                }
    return low;
}

DoubleForm riemann_double_form(const MetricField& m, const Vec& x) {
    return riemann_double_form(m, x, orthonormal_frame(m, x));
}

DoubleForm riemann_double_form(const MetricField& m, const Vec& x, const Mat& E) {
    return riemann_double_form(m, x, E, E);
}

DoubleForm riemann_double_form(const MetricField& m, const Vec& x, const Mat& form_frame, const Mat& endo_frame) {
    const int n = m.chart.dim;
    for (const Mat* E : {&form_frame, &endo_frame})
        if (E->rows() != n || E->cols() != n) throw ShapeError("riemann_double_form: frame size mismatch");
    if (n < 2) {
        m.validate_point(x);
        return DoubleForm(n, n, n);
    }
    const std::vector<double> R = riemann_lowered(m, x);
    auto idx = [n](int a, int b, int c, int d) { return static_cast<std::size_t>(((a * n + b) * n + c) * n + d); };
    // T(c,d,a,b) = sum E_mc E_kd E_ia E_jb R_{mkij}, contracted one index at a time.
    std::vector<double> t1(R.size()), t2(R.size());
    auto contract = [&](const std::vector<double>& in, std::vector<double>& out, int slot) {
        const Mat& E = slot < 2 ? endo_frame : form_frame;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        int ix[4] = {a, b, c, d};
                        double s = 0.0;
                        for (int p = 0; p < n; ++p) {
                            int jx[4] = {a, b, c, d};
                            jx[slot] = p;
                            s += E(p, ix[slot]) * in[idx(jx[0], jx[1], jx[2], jx[3])];
                        }
                        out[idx(a, b, c, d)] = s;
                    }
    };
    contract(R, t1, 0);
    contract(t1, t2, 1);
    contract(t2, t1, 2);
    contract(t1, t2, 3);
    DoubleForm F(n, 2, 2);
    const auto& pairs = mi::subsets(n, 2);
    for (std::size_t I = 0; I < pairs.size(); ++I) {
        int a = -1, b = -1;
        for (int bit = 0; bit < n; ++bit)
            if (pairs[I] & (1u << bit)) (a < 0 ? a : b) = bit;
        for (std::size_t J = 0; J < pairs.size(); ++J) {
            int c = -1, d = -1;
            for (int bit = 0; bit < n; ++bit)
                if (pairs[J] & (1u << bit)) (c < 0 ? c : d) = bit;
            // stored index order (m, k, i, j) -> (c, d, a, b)
            F.coeff(I, J) = t2[idx(c, d, a, b)];
        }
    }
    return F;
}

DoubleForm bilinear_form(const Mat& S, const Mat& E) {
    const int n = static_cast<int>(S.rows());
    const Mat T = E.transpose() * S * E;
    DoubleForm F(n, 1, 1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) F.coeff(a, b) = 0.5 * (T(a, b) + T(b, a));
    return F;
}

}  // namespace gblab
