#include "gblab/quadrature/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "gblab/errors.hpp"
#include "gblab/kernels/kernels.hpp"

namespace gblab {

AxisRule gauss_legendre(int n) {
    if (n < 1 || n > 256) throw DomainError("gauss_legendre: node count must lie in [1, 256]");
    AxisRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            const double pn = n == 1 ? x : p1;
            const double pnm1 = n == 1 ? 1.0 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1.0);
            const double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = pk;
        }
        dp = n * (x * (n == 1 ? x : p1) - (n == 1 ? 1.0 : p0)) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2) rule.nodes[n / 2] = 0.0;
    return rule;
}

AxisRule trapezoid_rule(double lo, double hi, int count) {
    if (count < 1) throw DomainError("trapezoid_rule: node count must be positive");
    AxisRule rule;
    rule.periodic = true;
    const double H = (hi - lo) / count;
    for (int i = 0; i < count; ++i) {
        rule.nodes.push_back(lo + H * i);
        rule.weights.push_back(H);
    }
    return rule;
}

AxisRule gauss_legendre_panels(double lo, double hi, int panels, int per_panel) {
    if (panels < 1) throw DomainError("gauss_legendre_panels: panel count must be positive");
    const AxisRule ref = gauss_legendre(per_panel);
    AxisRule rule;
    const double H = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + H * p;
        for (int i = 0; i < per_panel; ++i) {
            rule.nodes.push_back(a + 0.5 * H * (ref.nodes[i] + 1.0));
            rule.weights.push_back(0.5 * H * ref.weights[i]);
        }
    }
    return rule;
}

MeshSpec MeshSpec::for_chart(const Chart& chart, int level, int base) {
    return for_chart(chart, level, std::vector<int>(chart.dim, base));
}

MeshSpec MeshSpec::for_chart(const Chart& chart, int level, const std::vector<int>& base) {
    if (level < 1 || level > 7) throw DomainError("mesh level must lie in [1, 7]");
    if (static_cast<int>(base.size()) != chart.dim) throw ShapeError("mesh: one base count per axis required");
    MeshSpec m;
    m.level = level;
    const int scale = 1 << (level - 1);
    for (int a = 0; a < chart.dim; ++a) {
        if (base[a] < 4) throw DomainError("mesh: at least 4 nodes per axis");
        if (chart.periodic[a])
            m.axes.push_back(trapezoid_rule(chart.lower[a], chart.upper[a], base[a] * scale));
        else
            m.axes.push_back(gauss_legendre_panels(chart.lower[a], chart.upper[a], scale, base[a]));
    }
    return m;
}

std::vector<int> MeshSpec::node_counts() const {
    std::vector<int> c;
    for (const auto& a : axes) c.push_back(static_cast<int>(a.nodes.size()));
    return c;
}

std::size_t MeshSpec::total_nodes() const {
    std::size_t t = 1;
    for (const auto& a : axes) t *= a.nodes.size();
    return t;
}

namespace {

std::string format_point(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

void node_point(const MeshSpec& mesh, std::size_t idx, double* x, double& w) {
    const std::size_t d = mesh.axes.size();
    w = 1.0;
    std::size_t rem = idx;
    for (std::size_t a = d; a-- > 0;) {
        const std::size_t n = mesh.axes[a].nodes.size();
        const std::size_t i = rem % n;
        rem /= n;
        x[a] = mesh.axes[a].nodes[i];
    }
    rem = idx;
    double wa[8];
    for (std::size_t a = d; a-- > 0;) {
        const std::size_t n = mesh.axes[a].nodes.size();
        wa[a] = mesh.axes[a].weights[rem % n];
        rem /= n;
    }
    for (std::size_t a = 0; a < d; ++a) w *= wa[a];
}

}  // namespace

double integrate_chart(const Density& f, const Chart& chart, const MeshSpec& mesh, const Executor& ex) {
    if (static_cast<int>(mesh.axes.size()) != chart.dim) throw ShapeError("integrate_chart: mesh/chart dimension mismatch");
    for (const auto& a : mesh.axes)
        if (a.nodes.size() < 4) throw DomainError("integrate_chart: at least 4 nodes per axis");
    const std::size_t N = mesh.total_nodes();
    std::vector<double> w(N), v(N);
    ex.parallel_for(N, [&](std::size_t i) {
        double x[8];
        node_point(mesh, i, x, w[i]);
        const std::span<const double> pt(x, chart.dim);
        try {
            v[i] = f(pt);
        } catch (const std::exception& e) {
            throw IntegrationError("evaluator failed at node " + format_point(pt) + ": " + e.what());
        }
        if (!std::isfinite(v[i])) throw IntegrationError("evaluator returned a non-finite value at node " + format_point(pt));
    });
    return kernels::weighted_sum(w, v);
}

double integrate_fibers(const Chart& base, const MeshSpec& base_mesh, const Chart& fiber, const MeshSpec& fiber_mesh,
                        const Density& a, const Density& c, const Executor& ex) {
    const double ib = integrate_chart(a, base, base_mesh, ex);
    const double iff = integrate_chart(c, fiber, fiber_mesh, ex);
    return ib * iff;
}

double integrate_fibers(const Chart& base, const MeshSpec& base_mesh, const Chart& fiber, const MeshSpec& fiber_mesh,
                        const std::function<double(std::span<const double>, std::span<const double>)>& F,
                        const Executor& ex) {
    const Executor serial(1);
    return integrate_chart(
        [&](std::span<const double> b) {
            return integrate_chart([&](std::span<const double> f) { return F(b, f); }, fiber, fiber_mesh, serial);
        },
        base, base_mesh, ex);
}

void ConvergenceTable::append(int level, std::size_t nodes, double value) {
    if (!rows.empty() && level <= rows.back().level) throw DomainError("convergence table: levels must increase");
    ConvergenceRow r{level, nodes, value, std::numeric_limits<double>::quiet_NaN(),
                     std::numeric_limits<double>::quiet_NaN()};
    if (!rows.empty()) {
        r.diff = value - rows.back().value;
        const double prev = rows.back().diff;
        if (std::isfinite(prev) && prev != 0.0 && r.diff != 0.0) r.order = std::log2(std::abs(prev / r.diff));
    }
    rows.push_back(r);
}

std::string ConvergenceTable::to_csv() const {
    auto num = [](double x) {
        if (std::isnan(x)) return std::string("nan");
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return std::string(buf);
    };
    std::string out = "level,nodes,value,diff,order\n";
    for (const auto& r : rows)
        out += std::to_string(r.level) + "," + std::to_string(r.nodes) + "," + num(r.value) + "," + num(r.diff) + "," +
               num(r.order) + "\n";
    return out;
}

RefineResult refine_until(const std::function<LevelSample(int)>& eval, double tol, int max_levels, int start_level) {
    if (max_levels > 7) throw DomainError("refine_until: at most 7 levels");
    if (start_level < 1 || start_level > max_levels) throw DomainError("refine_until: start level out of range");
    RefineResult res;
    for (int l = start_level; l <= max_levels; ++l) {
        const LevelSample s = eval(l);
        if (!res.table.rows.empty() && s.nodes <= res.table.rows.back().nodes)
            throw IntegrationError("refine_until: node count did not grow between levels");
        res.table.append(l, s.nodes, s.value);
        res.value = s.value;
        if (res.table.rows.size() >= 2 && std::abs(res.table.rows.back().diff) < tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

std::vector<double> geometric_schedule(double r0, int count, double ratio) {
    std::vector<double> r;
    double x = r0;
    for (int i = 0; i < count; ++i, x *= ratio) r.push_back(x);
    return r;
}

Extrapolation r_limit_extrapolate(std::span<const LimitSample> samples, int degree) {
    if (degree < 0) throw DomainError("extrapolation degree must be nonnegative");
    const std::size_t m = samples.size();
    if (m < static_cast<std::size_t>(degree) + 2) throw DomainError("extrapolation needs at least degree + 2 samples");
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double q = samples[i + 1].r / samples[i].r;
        if (!(q >= 0.3 - 1e-12 && q <= 0.7 + 1e-12))
            throw DomainError("extrapolation samples must be geometric with ratio in [0.3, 0.7]");
    }
    double rmax = 0.0;
    for (const auto& s : samples) rmax = std::max(rmax, std::abs(s.r));
    Eigen::MatrixXd V(m, degree + 1);
    Eigen::VectorXd y(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double t = samples[i].r / rmax;
        double p = 1.0;
        for (int j = 0; j <= degree; ++j, p *= t) V(i, j) = p;
        y(i) = samples[i].value;
    }
    Extrapolation out;
    out.degree = degree;
    out.samples.assign(samples.begin(), samples.end());
    const Eigen::VectorXd c = V.colPivHouseholderQr().solve(y);
    out.value = c(0);
    out.fit_residual = (V * c - y).norm();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
    const auto sv = svd.singularValues();
    out.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (out.condition > 1e10) {
        out.ill_conditioned = true;
        out.warning = "ill-conditioned fit (condition number above 1e10)";
    }
    return out;
}

}  // namespace gblab
