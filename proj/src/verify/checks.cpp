#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "gblab/doubleform/pfaffian.hpp"
#include "gblab/errors.hpp"
#include "gblab/invariants/boundary_values.hpp"
#include "gblab/invariants/coefficients.hpp"
#include "gblab/invariants/forms.hpp"

namespace gblab::verify::detail {

namespace {

using std::numbers::pi;

constexpr int kLimitSamples = 8;
constexpr int kLimitDegree = 5;
constexpr int kPathSteps = 8;

double two_pi_pow(int k) { return std::pow(2 * pi, k); }

const FibrationData& fibration_of(const GeometrySpec& g, const char* check) {
    if (!g.fibration) throw ConfigError(std::string(check) + ": geometry '" + g.name + "' has no fibration data");
    return *g.fibration;
}

const Stratum& stratum_of(const GeometrySpec& g, StratumKind kind, const char* check) {
    for (const auto& s : g.strata)
        if (s.kind == kind) return s;
    throw ConfigError(std::string(check) + ": geometry '" + g.name + "' has no " + stratum_kind_name(kind) + " stratum");
}

double need_data(const GeometrySpec& g, const std::string& key, const char* check) {
    auto it = g.data.find(key);
    if (it == g.data.end()) throw ConfigError(std::string(check) + ": geometry '" + g.name + "' lacks reference " + key);
    return it->second;
}

void bad_quantity(const char* check, const std::string& q) {
    throw ConfigError(std::string(check) + ": unknown quantity '" + q + "'");
}

void note_epsilon(Ctx& c, const CollarMetric& col, const std::string& stratum, CheckResult& r) {
    std::string s = stratum + ": " + col.family + " family, epsilon = " + (col.epsilon > 0 ? "+1" : "-1") +
                    ", normal = " + (col.normal_sign() > 0 ? "+" : "-") + "d_r";
    if (c.eps) s += " (override)";
    if (std::find(r.epsilon_notes.begin(), r.epsilon_notes.end(), s) == r.epsilon_notes.end()) r.epsilon_notes.push_back(s);
}

// Reference for the odd Pfaffian of the round S^n(rho) and the flat torus of side L.
double odd_pfaffian_reference(const GeometrySpec& g) {
    const int n = g.dim;
    const int k = (n + 1) / 2;
    const double nf = coeff::to_double(coeff::factorial(n));
    if (g.builtin == "flat_torus")
        return coeff::to_double(coeff::odd_pfaffian_coefficient(0, k)) * nf * std::pow(g.param("L"), n);
    const double rho = g.param("rho");
    // |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2)
    const double area = 2.0 * std::pow(pi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
    double v = 0.0;
    for (int j = 0; j < k; ++j)
        v += coeff::to_double(coeff::odd_pfaffian_coefficient(j, k)) * nf * std::pow(0.5, j) * std::pow(rho, n - 2 * j);
    return v * area;
}

struct CheckOut {
    double value = 0.0;
    double reference = 0.0;
    double tol_scale = 1.0;
    bool side_ok = true;
};

using CheckFn = CheckOut (*)(const GeometrySpec&, const std::string&, Ctx&, CheckResult&);

CheckOut closed_gb(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (!g.strata.empty()) throw ConfigError("ClosedGB: geometry '" + g.name + "' has boundary strata");
    if (g.dim % 2) throw ConfigError("ClosedGB: dimension must be even");
    const int k = g.dim / 2;
    const double I = pf_integral(c, g);
    r.extras["pf_integral"] = I;
    if (q == "chi") return {I / two_pi_pow(k), g.chi_ref};
    if (q == "pf_integral") return {I, two_pi_pow(k) * g.chi_ref};
    bad_quantity("ClosedGB", q);
    return {};
}

double path_route_integral(Ctx& c, const CollarMetric& col, double r) {
    const int base = col.boundary.dim >= 3 ? 6 : 8;
    return integrate_density(
        c, col.boundary,
        [&col, r](const Vec& y) {
            const DoubleForm T = boundary_path_transgression(col, r, y, kPathSteps);
            return T.coeff(0, 0) * std::sqrt(col.eval(r, y).determinant());
        },
        base);
}

CheckOut boundary_gb(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    const Stratum& s = stratum_of(g, StratumKind::boundary, "BoundaryGB");
    if (g.dim % 2) throw ConfigError("BoundaryGB: dimension must be even");
    const int k = g.dim / 2;
    const CollarMetric col = collar_of(c, s);
    note_epsilon(c, col, s.name, r);
    r.notes.push_back(sign_ledger_note());
    const double B = slice_integral(c, col, s.r_at);
    r.extras["boundary_integral"] = B;
    if (q == "two_route") {
        const double P = path_route_integral(c, col, s.r_at);
        r.extras["path_route_integral"] = P;
        r.notes.push_back("value: path transgression route; reference: second fundamental form route");
        return {P, B};
    }
    const double I = pf_integral(c, g);
    r.extras["pf_integral"] = I;
    if (q == "chi") return {(I - B) / two_pi_pow(k), g.chi_ref};
    if (q == "boundary_integral") {
        if (g.param("c") != 0.0) throw ConfigError("BoundaryGB: boundary_integral reference needs a flat disk (c = 0)");
        return {B / two_pi_pow(k), -g.chi_ref};
    }
    bad_quantity("BoundaryGB", q);
    return {};
}

CheckOut odd_pfaffian(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (g.dim % 2 == 0) throw ConfigError("OddPfaffian: dimension must be odd");
    if (g.builtin != "sphere" && g.builtin != "flat_torus") throw ConfigError("OddPfaffian: needs sphere or flat_torus");
    const int k = (g.dim + 1) / 2;
    double I = 0.0;
    for (const auto& m : g.charts) I += integrate_density(c, m, odd_pfaffian_density);
    const double ref = odd_pfaffian_reference(g);
    r.extras["integral"] = I;
    r.extras["magnitude_over_2pi_k"] = std::abs(I) / two_pi_pow(k);
    if (q == "integral") return {I, ref};
    if (q == "magnitude") return {std::abs(I), std::abs(ref)};
    bad_quantity("OddPfaffian", q);
    return {};
}

double cone_closed_form(Ctx& c, const GeometrySpec& g, double theta) {
    const FibrationData& f = fibration_of(g, "ConeGB");
    const int n = f.fiber_dim;
    const int k = (n + 1) / 2;
    std::vector<double> lk(k);
    for (int j = 0; j < k; ++j)
        lk[j] = integrate_density(c, f.fiber, [j](const MetricField& m, const Vec& x) { return lk_density(j, m, x); });
    return cone_transgression_value(theta, lk, n);
}

CheckOut cone_gb(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    const Stratum& s = stratum_of(g, StratumKind::cone_tip, "ConeGB");
    const int k = g.dim / 2;
    if (g.dim % 2) throw ConfigError("ConeGB: cone dimension must be even");
    const double theta = need_data(g, "theta", "ConeGB");
    const Limit L = stratum_limit(c, s, r);
    const double closed = cone_closed_form(c, g, theta);
    r.extras["slice_limit"] = L.value;
    r.extras["closed_form"] = closed;
    r.extras["theta"] = theta;
    if (q == "two_route") {
        r.notes.push_back("value: r -> 0 extrapolation of the slice integral; reference: inclination closed form");
        return {L.value, closed};
    }
    if (q == "singular_contribution") {
        r.notes.push_back("value: 1 - (2 pi)^-k lim; reference: 1 - (2 pi)^-k closed form (1 - theta for a 2D cone)");
        return {1.0 - L.value / two_pi_pow(k), 1.0 - closed / two_pi_pow(k)};
    }
    bad_quantity("ConeGB", q);
    return {};
}

CheckOut edge_limit(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (q != "limit") bad_quantity("EdgeLimit", q);
    const Stratum& s = stratum_of(g, StratumKind::edge, "EdgeLimit");
    const FibrationData& f = fibration_of(g, "EdgeLimit");
    const bool even = f.base_dim % 2 == 0;
    if (even && g.data.count("twist") && g.data.at("twist") != 0.0)
        throw ConfigError("EdgeLimit: even-base reference needs twist = 0");
    const Limit L = stratum_limit(c, s, r);
    r.extras["slice_limit"] = L.value;
    r.extras["value_at_r0"] = L.first;
    if (!even) {
        r.notes.push_back("odd base: limit vanishes; tolerance scaled by |value at r0|");
        return {L.value, 0.0, std::abs(L.first)};
    }
    const double E = edge_boundary_value(f, c.level, c.ex);
    r.extras["edge_boundary_value"] = E;
    return {L.value, collar_of(c, s).normal_sign() * E};
}

CheckOut edge_gb(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (q != "identity") bad_quantity("EdgeGB", q);
    const Stratum& s = stratum_of(g, StratumKind::edge, "EdgeGB");
    const FibrationData& f = fibration_of(g, "EdgeGB");
    if (f.base_dim % 2 || g.dim % 2) throw ConfigError("EdgeGB: needs even base and even total dimension");
    if (g.data.count("warp") && (g.data.at("warp") != 0.0 || g.data.at("twist") != 0.0))
        throw ConfigError("EdgeGB: identity is checked on the product model (warp = twist = 0)");
    if (g.data.count("lambda") && g.data.at("lambda") != 0.0) throw ConfigError("EdgeGB: needs lambda = 0");
    const int k = g.dim / 2;
    const double I = pf_integral(c, g);
    const Limit L = stratum_limit(c, s, r);
    r.extras["pf_integral"] = I;
    r.extras["edge_limit"] = L.value;
    r.extras["edge_boundary_value"] = edge_boundary_value(f, c.level, c.ex);
    r.notes.push_back("value: int Pf - lim; on the product model the slices are homothetic, so the edge limit equals the "
                      "outer boundary term at r = 1");
    const double ref = two_pi_pow(k) * g.chi_ref;
    return {I - L.value, ref, std::abs(ref) > 0 ? std::abs(ref) : two_pi_pow(k)};
}

CheckOut edge_horizontal(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (q != "limit") bad_quantity("EdgeHorizontal", q);
    const Stratum& s = stratum_of(g, StratumKind::edge, "EdgeHorizontal");
    const FibrationData& f = fibration_of(g, "EdgeHorizontal");
    const CollarMetric col = collar_of(c, s);
    const Limit L = stratum_limit(c, s, r);
    const int n_b = f.base_dim;
    const MetricFn gdot = g.horizontal_variation ? g.horizontal_variation
                                                 : MetricFn([n_b](const Vec&) { return Mat(Mat::Zero(n_b, n_b)); });
    const double ref = edge_horizontal_value(f, gdot, col.normal_sign(), c.level, c.ex);
    r.extras["slice_limit"] = L.value;
    r.extras["horizontal_formula"] = ref;
    r.extras["edge_boundary_value"] = col.normal_sign() * edge_boundary_value(f, c.level, c.ex);
    if (!g.horizontal_variation) r.notes.push_back("no horizontal variation: reference reduces to the edge value");
    return {L.value, ref};
}

CheckOut fibered_gb(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    const FibrationData& f = fibration_of(g, "FiberedGB");
    if (q == "total_curvature") {
        if (g.charts.empty()) throw ConfigError("FiberedGB: geometry has no interior charts");
        return {pf_integral(c, g), need_data(g, "total_curvature", "FiberedGB")};
    }
    std::vector<const Stratum*> ends;
    for (const auto& s : g.strata)
        if (s.kind == StratumKind::fibered_end) ends.push_back(&s);
    if (ends.empty()) throw ConfigError("FiberedGB: geometry has no fibered end");
    if (q == "end_limit") {
        const Limit L = stratum_limit(c, *ends[0], r);
        const CollarMetric col = collar_of(c, *ends[0]);
        const double ref = fibered_boundary_value(f, col.normal_sign(), c.level, c.ex);
        r.extras["end_limit"] = L.value;
        r.extras["value_at_u0"] = L.first;
        return {L.value, ref, std::max(1.0, std::abs(ref))};
    }
    if (q == "total") {
        if (g.charts.empty()) throw ConfigError("FiberedGB: total identity needs interior charts");
        if (g.dim % 2) throw ConfigError("FiberedGB: total identity needs even dimension");
        const int k = g.dim / 2;
        const double I = pf_integral(c, g);
        double sum = 0.0;
        for (const Stratum* s : ends) {
            const Limit L = stratum_limit(c, *s, r);
            r.extras["limit_" + s->name] = L.value;
            sum += L.value;
        }
        r.extras["pf_integral"] = I;
        r.extras["fibered_boundary_value"] = fibered_boundary_value(f, collar_of(c, *ends[0]).normal_sign(), c.level, c.ex);
        r.notes.push_back("value: int Pf + sum over ends of the slice limit");
        const double scale = g.data.count("total_curvature") ? std::abs(g.data.at("total_curvature")) : two_pi_pow(k);
        return {I + sum, two_pi_pow(k) * g.chi_ref, scale};
    }
    bad_quantity("FiberedGB", q);
    return {};
}

CheckOut orbifold_gb(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (q != "chi") bad_quantity("OrbifoldGB", q);
    if (g.dim != 2 || !g.chi_pieces.count("stratum_order")) throw ConfigError("OrbifoldGB: needs a 2D orbifold with strata");
    const double w = g.symmetry_weight.value();
    const double v = pf_integral(c, g) / (2 * pi);
    const double strata = g.chi_pieces.at("strata");
    const double order = g.chi_pieces.at("stratum_order");
    const double chi_s = g.chi_pieces.at("chi_stratum");
    const double t7 = g.chi_ref - strata * chi_s * (1.0 - 1.0 / order);
    r.extras["weight"] = w;
    r.extras["stratified_chi"] = t7;
    r.extras["stratified_residual"] = std::abs(v - t7);
    r.notes.push_back("pass also requires |value - (chi(|X|) - sum (1 - 1/order) chi(stratum))| within tolerance");
    CheckOut o{v, g.chi_ref * w};
    o.side_ok = std::abs(v - t7) <= c.tol;
    return o;
}

CheckOut perturbation_stability(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (q != "limit_difference") bad_quantity("PerturbationStability", q);
    const Stratum& s = stratum_of(g, StratumKind::cone_tip, "PerturbationStability");
    const GeometrySpec model =
        catalog_get("geometric_cone", {{"link", g.choice("link")}, {"theta", g.params.at("theta")}});
    const Limit a = stratum_limit(c, s, r);
    const Limit b = stratum_limit(c, model.strata.at(0), r, "model");
    r.extras["limit_perturbed"] = a.value;
    r.extras["limit_model"] = b.value;
    return {std::abs(a.value - b.value), 0.0};
}

// Limit of the g^phi-orthonormal connection of a cone-like collar: d_r -> 0, and for a vertical axis i
// the (0, V) column is -<d_i, e_V>, the (V, 0) row +<d_i, e_V>, the V-V block the Levi-Civita form of theta^2 h.
std::vector<Mat> phi_model_limit(const MetricField& link, double theta, const Vec& y) {
    const int m = link.chart.dim;
    const MetricField hs(link.chart, [eval = link.eval, theta](const Vec& p) { return Mat(theta * theta * eval(p)); },
                         link.fd_step, link.fd_order);
    const Mat F = orthonormal_frame(hs, y);
    const Mat Finv = F.inverse();
    const Christoffel G = m >= 1 ? christoffel(hs, y) : Christoffel{};
    std::vector<Mat> out(m + 1, Mat::Zero(m + 1, m + 1));
    for (int i = 0; i < m; ++i) {
        Mat w = Mat::Zero(m + 1, m + 1);
        for (int a = 0; a < m; ++a) {
            w(0, 1 + a) = -Finv(a, i);
            w(1 + a, 0) = Finv(a, i);
        }
        const double h = hs.step(i, y);
        const Mat dF = central_difference([&hs](const Vec& p) { return orthonormal_frame(hs, p); }, y, i, h, hs.fd_order);
        w.block(1, 1, m, m) = Finv * (dF + G.along(i) * F);
        out[1 + i] = w;
    }
    return out;
}

CheckOut phi_limit(const GeometrySpec& g, const std::string& q, Ctx&, CheckResult& r) {
    if (q != "max_entry_error") bad_quantity("PhiLimit", q);
    const Stratum& s = stratum_of(g, StratumKind::cone_tip, "PhiLimit");
    const FibrationData& f = fibration_of(g, "PhiLimit");
    const double theta = g.data.count("theta") ? g.data.at("theta") : 1.0;
    const CollarMetric& col = s.collar;
    const int m = col.boundary.dim;
    const std::vector<double> sched = geometric_schedule(s.r0, kLimitSamples);
    double worst = 0.0;
    Table t{"phi_limit", {"point", "axis", "row", "col", "limit", "expected"}, {}};
    for (int p = 0; p < 3; ++p) {
        const double frac = 0.31 + 0.26 * p;
        Vec y(m);
        for (int i = 0; i < m; ++i) y(i) = col.boundary.lower[i] + frac * col.boundary.extent(i);
        std::vector<std::vector<Mat>> samples;
        for (double rr : sched) {
            Vec x(m + 1);
            x(0) = rr;
            x.tail(m) = y;
            samples.push_back(phi_conjugated_connection(col, f, x).connection.omega);
        }
        const std::vector<Mat> expect = phi_model_limit(f.fiber, theta, y);
        for (int ax = 0; ax <= m; ++ax)
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= m; ++j) {
                    std::vector<LimitSample> ls;
                    for (std::size_t n = 0; n < sched.size(); ++n) ls.push_back({sched[n], samples[n][ax](i, j)});
                    const Extrapolation e = r_limit_extrapolate(ls, kLimitDegree);
                    worst = std::max(worst, std::abs(e.value - expect[ax](i, j)));
                    t.rows.push_back({double(p), double(ax), double(i), double(j), e.value, expect[ax](i, j)});
                }
    }
    r.tables.push_back(std::move(t));
    r.extras["theta"] = theta;
    return {worst, 0.0};
}

CheckOut first_order_conic(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (q != "chi_identity") bad_quantity("FirstOrderConic", q);
    if (g.dim != 2) throw ConfigError("FirstOrderConic: implemented for surfaces");
    const Stratum& s = stratum_of(g, StratumKind::cone_tip, "FirstOrderConic");
    const FibrationData& f = fibration_of(g, "FirstOrderConic");
    const CollarMetric col = collar_of(c, s);
    note_epsilon(c, col, s.name, r);
    const std::vector<double> sched = geometric_schedule(s.r0, kLimitSamples);
    const int ns = col.normal_sign();
    // II^g(e, e) vol = -ns omega(d_y)(1, 0) dy on the link
    const double tip = integrate_density(
        c, col.boundary,
        [&](const Vec& y) {
            std::vector<LimitSample> ls;
            for (double rr : sched) {
                Vec x(2);
                x << rr, y(0);
                ls.push_back({rr, -ns * phi_conjugated_connection(col, f, x).connection.omega[1](1, 0)});
            }
            return r_limit_extrapolate(ls, kLimitDegree).value;
        },
        8);
    const double I = pf_integral(c, g);
    const Limit L = stratum_limit(c, s, r);
    r.extras["pf_integral"] = I;
    r.extras["tip_term"] = tip;
    r.extras["slice_limit"] = L.value;
    r.notes.push_back("tip term from the limit of the phi-conjugated connection; slice_limit is the second route");
    return {I - tip, 2 * pi * g.chi_ref, 2 * pi};
}

CheckOut transgression_stokes(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (q != "max_pointwise_error") bad_quantity("TransgressionStokes", q);
    if (!g.partner || g.dim != 2 || g.charts.size() != 1) throw ConfigError("TransgressionStokes: needs a 2D metric pair");
    const MetricField& g1 = g.charts[0];
    const MetricField& g0 = *g.partner;
    const Chart& ch = g1.chart;
    if (!ch.periodic[0] || !ch.periodic[1]) throw ConfigError("TransgressionStokes: needs a periodic chart");
    constexpr int kCheckGrid = 32;
    const int stride = 1 << (c.level - 1);
    const int N = kCheckGrid * stride;
    const double hx = ch.extent(0) / N;
    const double hy = ch.extent(1) / N;
    std::vector<double> ax(static_cast<std::size_t>(N) * N), ay(ax.size());
    c.nodes += static_cast<long>(ax.size());
    const OrientedFrameContext ctx(2, 1);
    c.ex.parallel_for(ax.size(), [&](std::size_t idx) {
        const int i = static_cast<int>(idx / N);
        const int j = static_cast<int>(idx % N);
        Vec x(2);
        x << ch.lower[0] + i * hx, ch.lower[1] + j * hy;
        const PathGauge pg = metric_path_gauge(g0, g1, x, kPathSteps);
        const DoubleForm T = path_transgression_form(pg, ctx);
        const Mat Einv = pg.frame0.inverse();
        ax[idx] = T.coeff(0, 0) * Einv(0, 0) + T.coeff(1, 0) * Einv(1, 0);
        ay[idx] = T.coeff(0, 0) * Einv(0, 1) + T.coeff(1, 0) * Einv(1, 1);
    });
    // eighth-order periodic central differences
    static constexpr double w[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    auto at = [N](const std::vector<double>& a, int i, int j) { return a[((i + N) % N) * N + ((j + N) % N)]; };
    const std::size_t M = static_cast<std::size_t>(kCheckGrid) * kCheckGrid;
    std::vector<double> err(M), dpf(M);
    c.ex.parallel_for(M, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / kCheckGrid) * stride;
        const int j = static_cast<int>(idx % kCheckGrid) * stride;
        double dx_ay = 0.0, dy_ax = 0.0;
        for (int s = 1; s <= 4; ++s) {
            dx_ay += w[s - 1] * (at(ay, i + s, j) - at(ay, i - s, j));
            dy_ax += w[s - 1] * (at(ax, i, j + s) - at(ax, i, j - s));
        }
        Vec x(2);
        x << ch.lower[0] + i * hx, ch.lower[1] + j * hy;
        dpf[idx] = pfaffian_density(g1, x) - pfaffian_density(g0, x);
        err[idx] = std::abs(dx_ay / hx - dy_ax / hy - dpf[idx]);
    });
    double emax = 0.0, dmax = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        emax = std::max(emax, err[i]);
        dmax = std::max(dmax, std::abs(dpf[i]));
    }
    r.extras["max_abs_delta_pf"] = dmax;
    r.extras["auxiliary_grid"] = N;
    r.notes.push_back("d of the path transgression by eighth-order periodic differences on a " + std::to_string(N) + "^2 grid");
    return {emax, 0.0, dmax};
}

CheckOut algebra_identities(const GeometrySpec&, const std::string& q, Ctx&, CheckResult& r) {
    if (q != "failures") bad_quantity("AlgebraIdentities", q);
    int failures = 0;
    for (int p = 0; p <= 10; ++p) failures += coeff::double_factorial_sum(p) != coeff::double_factorial_sum_closed(p);
    for (int k = 1; k <= 10; ++k) failures += coeff::beta_integral(k) != coeff::beta_integral_closed(k);
    for (int n = 1; n <= 6; ++n) {
        using IForm = BasicDoubleForm<long long>;
        const long long b = top_coefficient(berezin(power(IForm::metric(n), n), OrientedFrameContext(n, 1)));
        failures += b != coeff::factorial(n);
    }
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int n = 2; n <= 8; n += 2)
        for (int t = 0; t < 20; ++t) {
            Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    A(i, j) = u(rng);
                    A(j, i) = -A(i, j);
                }
            const double pf = pfaffian_skew(A);
            const double det = A.determinant();
            worst = std::max(worst, std::abs(pf * pf - det) / std::max(1.0, std::abs(det)));
        }
    failures += worst > 1e-9;
    r.extras["pf_squared_minus_det"] = worst;
    r.notes.push_back("exact: double-factorial sums p <= 10, beta integrals k <= 10, B(h^n) = n! for n <= 6; "
                      "Pf^2 = det to 1e-9 for n <= 8");
    return {double(failures), 0.0};
}

CheckOut lens_obstruction(const GeometrySpec& g, const std::string& q, Ctx& c, CheckResult& r) {
    if (q != "weighted_tip") bad_quantity("LensObstruction", q);
    const Stratum& s = stratum_of(g, StratumKind::cone_tip, "LensObstruction");
    const int k = g.dim / 2;
    const double w = g.symmetry_weight.value();
    const Limit L = stratum_limit(c, s, r);
    const double v = w * L.value;
    const double q_chi = v / two_pi_pow(k);
    r.extras["weight"] = w;
    r.extras["normalized"] = q_chi;
    r.extras["integrality_defect"] = std::abs(q_chi - std::round(q_chi));
    if (g.symmetry_weight.den > 1)
        r.notes.push_back("normalized tip contribution 1/" + std::to_string(g.symmetry_weight.den) +
                          " is not an integer: a smooth filling of the quotient link would force an integer");
    return {v, two_pi_pow(k) * w};
}

struct Entry {
    CheckInfo info;
    CheckFn fn;
};

CheckInstance inst(const char* id, const char* q, const char* geom, ParamMap p, double tol, TolKind kind, int level) {
    return CheckInstance{id, q, geom, std::move(p), tol, kind, level};
}

std::vector<Entry> build_registry() {
    constexpr auto A = TolKind::absolute;
    constexpr auto R = TolKind::relative;
    std::vector<Entry> e;
    e.push_back({{"ClosedGB",
                  "(2 pi)^-k int Pf = chi on closed even-dimensional manifolds",
                  {"sphere", "flat_torus", "surface_of_revolution", "conformal_torus"},
                  {"chi", "pf_integral"},
                  {inst("ClosedGB", "chi", "sphere", {{"n", "2"}}, 1e-6, A, 2),
                   inst("ClosedGB", "chi", "sphere", {{"n", "4"}}, 1e-3, R, 1),
                   inst("ClosedGB", "pf_integral", "flat_torus", {{"n", "2"}}, 1e-12, A, 2),
                   inst("ClosedGB", "pf_integral", "flat_torus", {{"n", "4"}}, 1e-12, A, 1),
                   inst("ClosedGB", "chi", "surface_of_revolution", {}, 1e-6, A, 3),
                   inst("ClosedGB", "chi", "conformal_torus", {}, 1e-6, A, 2)}},
                 closed_gb});
    e.push_back({{"BoundaryGB",
                  "(2 pi)^k chi = int Pf - boundary correction, and the two boundary routes agree",
                  {"disk"},
                  {"chi", "boundary_integral", "two_route"},
                  {inst("BoundaryGB", "chi", "disk", {{"k", "1"}}, 1e-6, A, 2),
                   inst("BoundaryGB", "chi", "disk", {{"k", "2"}}, 1e-3, A, 1),
                   inst("BoundaryGB", "boundary_integral", "disk", {{"k", "1"}}, 1e-6, A, 2),
                   inst("BoundaryGB", "boundary_integral", "disk", {{"k", "2"}}, 1e-3, A, 1),
                   inst("BoundaryGB", "chi", "disk", {{"k", "1"}, {"c", "1"}}, 1e-6, A, 2),
                   inst("BoundaryGB", "two_route", "disk", {{"k", "1"}}, 1e-3, R, 1),
                   inst("BoundaryGB", "two_route", "disk", {{"k", "2"}}, 1e-3, R, 1)}},
                 boundary_gb});
    e.push_back({{"OddPfaffian",
                  "int Pf^odd on round odd spheres and flat tori",
                  {"sphere", "flat_torus"},
                  {"magnitude", "integral"},
                  {inst("OddPfaffian", "magnitude", "sphere", {{"n", "1"}}, 1e-8, A, 1),
                   inst("OddPfaffian", "magnitude", "sphere", {{"n", "3"}}, 1e-4, R, 1),
                   inst("OddPfaffian", "integral", "flat_torus", {{"n", "3"}}, 1e-10, R, 1)}},
                 odd_pfaffian});
    std::vector<CheckInstance> cones;
    for (const char* link : {"S1", "S3"})
        for (const char* th : {"0.5", "1"})
            cones.push_back(inst("ConeGB", "two_route", "geometric_cone", {{"link", link}, {"theta", th}}, 1e-3, R, 1));
    for (const char* th : {"0.5", "1"})
        cones.push_back(
            inst("ConeGB", "singular_contribution", "geometric_cone", {{"link", "S1"}, {"theta", th}}, 1e-4, A, 1));
    e.push_back({{"ConeGB",
                  "cone tip: inclination closed form against the r -> 0 slice limit",
                  {"geometric_cone", "cone", "perturbed_cone"},
                  {"two_route", "singular_contribution"},
                  cones},
                 cone_gb});
    e.push_back({{"EdgeLimit",
                  "edge slice integral extrapolates to the edge value (even base) or 0 (odd base)",
                  {"edge_product"},
                  {"limit"},
                  {inst("EdgeLimit", "limit", "edge_product", {{"base", "S1"}, {"fiber", "S2"}, {"twist", "0.3"}}, 1e-3, A, 1),
                   inst("EdgeLimit", "limit", "edge_product", {{"base", "S2"}, {"fiber", "S1"}, {"warp", "0.5"}}, 1e-3, R, 1)}},
                 edge_limit});
    e.push_back({{"EdgeGB",
                  "(2 pi)^k chi = int Pf - edge limit on the product edge model",
                  {"edge_product"},
                  {"identity"},
                  {inst("EdgeGB", "identity", "edge_product", {{"base", "S2"}, {"fiber", "S1"}}, 1e-3, A, 1)}},
                 edge_gb});
    e.push_back({{"EdgeHorizontal",
                  "edge limit with horizontal variation of the base metric against the derived double sum",
                  {"edge_horizontal"},
                  {"limit"},
                  {inst("EdgeHorizontal", "limit", "edge_horizontal", {{"lambda", "0.4"}}, 1e-3, R, 1),
                   inst("EdgeHorizontal", "limit", "edge_horizontal", {{"lambda", "0"}}, 1e-3, R, 1)}},
                 edge_horizontal});
    e.push_back({{"FiberedGB",
                  "(2 pi)^k chi = int Pf + sum of fibered end limits",
                  {"catenoid", "fibered_product"},
                  {"total", "total_curvature", "end_limit"},
                  {inst("FiberedGB", "total", "catenoid", {}, 1e-3, A, 4),
                   inst("FiberedGB", "total_curvature", "catenoid", {}, 1e-4, A, 4),
                   inst("FiberedGB", "end_limit", "fibered_product", {{"base", "S2"}, {"fiber", "S1"}}, 1e-3, A, 1),
                   inst("FiberedGB", "end_limit", "fibered_product", {{"base", "S3"}, {"fiber", "point"}}, 1e-3, R, 1),
                   inst("FiberedGB", "end_limit", "fibered_product", {{"base", "S1"}, {"fiber", "S2"}}, 1e-3, R, 1)}},
                 fibered_gb});
    std::vector<CheckInstance> orb;
    for (const char* p : {"2", "3", "5"}) orb.push_back(inst("OrbifoldGB", "chi", "football", {{"p", p}}, 1e-9, A, 3));
    e.push_back({{"OrbifoldGB", "weighted-cover Euler characteristic of the football and its stratified count",
                  {"football"}, {"chi"}, orb},
                 orbifold_gb});
    e.push_back({{"PerturbationStability",
                  "slice limits of a second-order perturbed cone and its model cone agree",
                  {"perturbed_cone", "cone"},
                  {"limit_difference"},
                  {inst("PerturbationStability", "limit_difference", "perturbed_cone", {{"link", "S1"}}, 1e-3, A, 1),
                   inst("PerturbationStability", "limit_difference", "perturbed_cone", {{"link", "S3"}}, 1e-3, A, 1)}},
                 perturbation_stability});
    e.push_back({{"PhiLimit",
                  "phi-conjugated connection extends to r = 0 with the model block entries",
                  {"geometric_cone", "perturbed_cone", "cone", "first_order_cone"},
                  {"max_entry_error"},
                  {inst("PhiLimit", "max_entry_error", "perturbed_cone", {{"link", "S1"}}, 1e-4, A, 1),
                   inst("PhiLimit", "max_entry_error", "geometric_cone", {{"link", "S3"}, {"theta", "0.5"}}, 1e-4, A, 1)}},
                 phi_limit});
    e.push_back({{"FirstOrderConic",
                  "Gauss-Bonnet with a first-order conical tip term from the phi-conjugated connection",
                  {"first_order_cone"},
                  {"chi_identity"},
                  {inst("FirstOrderConic", "chi_identity", "first_order_cone", {{"a", "0.3"}}, 1e-3, A, 3)}},
                 first_order_conic});
    e.push_back({{"TransgressionStokes",
                  "d of the path transgression equals the Pfaffian difference pointwise",
                  {"conformal_torus"},
                  {"max_pointwise_error"},
                  {inst("TransgressionStokes", "max_pointwise_error", "conformal_torus", {}, 1e-3, A, 1)}},
                 transgression_stokes});
    e.push_back({{"AlgebraIdentities", "coefficient identities, B(h^n) = n!, Pf^2 = det", {}, {"failures"},
                  {inst("AlgebraIdentities", "failures", "", {}, 0.0, A, 1)}},
                 algebra_identities});
    std::vector<CheckInstance> lens;
    for (const char* o : {"2", "3", "4"})
        lens.push_back(inst("LensObstruction", "weighted_tip", "lens_cone", {{"k", "2"}, {"order", o}}, 1e-4, R, 1));
    e.push_back({{"LensObstruction", "weighted cone tip over a lens quotient equals (2 pi)^k / |G|", {"lens_cone"},
                  {"weighted_tip"}, lens},
                 lens_obstruction});
    return e;
}

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = build_registry();
    return r;
}

}  // namespace

Ctx::Ctx(const RunOptions& o, int lvl, double t) : ex(o.workers), level(lvl), eps(o.epsilon), tol(t) {}

double integrate_density(Ctx& c, const Chart& chart, const std::function<double(const Vec&)>& f, int base) {
    const MeshSpec mesh = MeshSpec::for_chart(chart, c.level, base);
    c.nodes += static_cast<long>(mesh.total_nodes());
    return integrate_chart([&f](std::span<const double> x) { return f(to_vec(x)); }, chart, mesh, c.ex);
}

double integrate_density(Ctx& c, const MetricField& m, const PointDensity& d, int base) {
    return integrate_density(c, m.chart, [&m, &d](const Vec& x) { return d(m, x); }, base);
}

double pf_integral(Ctx& c, const GeometrySpec& g) {
    double I = 0.0;
    for (const auto& m : g.charts) I += integrate_density(c, m, pfaffian_density);
    return g.symmetry_weight.value() * I;
}

CollarMetric collar_of(const Ctx& c, const Stratum& s) { return c.eps ? s.collar.with_epsilon(*c.eps) : s.collar; }

double slice_integral(Ctx& c, const CollarMetric& col, double r) {
    return integrate_density(c, col.boundary, [&col, r](const Vec& y) { return boundary_correction_density(col, r, y); });
}

Limit stratum_limit(Ctx& c, const Stratum& s, CheckResult& res, const std::string& label) {
    const CollarMetric col = collar_of(c, s);
    note_epsilon(c, col, (label.empty() ? "" : label + " ") + s.name, res);
    const std::string name = (label.empty() ? "" : label + "_") + s.name + "_limit";
    Limit L;
    if (s.kind == StratumKind::boundary) {
        L.value = L.first = slice_integral(c, col, s.r_at);
        res.tables.push_back(Table{name, {"r", "value"}, {{s.r_at, L.value}}});
        return L;
    }
    const bool at_infinity = s.kind == StratumKind::fibered_end;
    std::vector<LimitSample> ls;
    for (double t : geometric_schedule(s.r0, kLimitSamples)) ls.push_back({t, slice_integral(c, col, at_infinity ? 1.0 / t : t)});
    L.fit = r_limit_extrapolate(ls, kLimitDegree);
    L.value = L.fit.value;
    L.first = ls.front().value;
    Table t{name, {at_infinity ? "u" : "r", "value"}, {}};
    for (const auto& p : ls) t.rows.push_back({p.r, p.value});
    res.tables.push_back(std::move(t));
    if (L.fit.ill_conditioned) res.notes.push_back(s.name + ": " + L.fit.warning);
    res.extras[(label.empty() ? "" : label + "_") + s.name + "_fit_residual"] = L.fit.fit_residual;
    return L;
}

const std::vector<CheckInfo>& check_infos() {
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> v;
        for (const auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

CheckResult execute(const CheckInstance& in, const GeometrySpec* g, const RunOptions& opt) {
    const Entry* entry = nullptr;
    for (const auto& e : registry())
        if (e.info.id == in.id) entry = &e;
    if (!entry) throw RegistryError("unknown check '" + in.id + "'");
    CheckResult r;
    r.id = in.id;
    r.quantity = in.quantity;
    r.geometry = in.geometry.empty() ? "none" : in.geometry;
    if (g) r.params = g->params;
    r.level = opt.level > 0 ? opt.level : in.level;
    r.tol_kind = in.tol_kind;
    const double base_tol = opt.tol ? *opt.tol : in.tolerance;
    Ctx c(opt, r.level, base_tol);
    static const GeometrySpec none;
    CheckOut o;
    try {
        o = entry->fn(g ? *g : none, in.quantity, c, r);
        // scales size absolute tolerances only
        const double scale = in.tol_kind == TolKind::absolute ? o.tol_scale : 1.0;
        r.tolerance = opt.tol ? *opt.tol : in.tolerance * scale;
        if (scale != 1.0) r.extras["tolerance_scale"] = scale;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& ex) {
        r.notes.push_back(std::string("error: ") + ex.what());
        r.value = r.reference = std::numeric_limits<double>::quiet_NaN();
        r.abs_residual = r.rel_residual = std::numeric_limits<double>::quiet_NaN();
        r.tolerance = base_tol;
        r.nodes = c.nodes;
        r.pass = false;
        return r;
    }
    r.nodes = c.nodes;
    r.value = o.value;
    r.reference = o.reference;
    r.abs_residual = std::abs(o.value - o.reference);
    r.rel_residual = o.reference != 0.0 ? r.abs_residual / std::abs(o.reference) : r.abs_residual;
    const double res = r.tol_kind == TolKind::absolute ? r.abs_residual : r.rel_residual;
    r.pass = std::isfinite(res) && res <= r.tolerance && o.side_ok;
    if (!o.side_ok) r.notes.push_back("secondary condition failed");
    return r;
}

}  // namespace gblab::verify::detail
