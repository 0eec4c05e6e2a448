#include "gblab/catalog/catalog.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

#include "gblab/errors.hpp"

namespace gblab {

namespace {

using std::numbers::pi;
using K = ParamSpec::Kind;

constexpr int kFdOrder = 4;
constexpr double kFarRadius = 1e6;
constexpr double kCatenoidHalfLength = 10.0;

MetricField field(Chart c, MetricFn f) { return MetricField(std::move(c), std::move(f), 1e-4, kFdOrder); }

Mat round_sphere(int n, const Vec& y) {
    Mat g = Mat::Zero(n, n);
    double f = 1.0;
    for (int i = 0; i < n; ++i) {
        g(i, i) = f;
        f *= std::sin(y(i)) * std::sin(y(i));
    }
    return g;
}

Chart sphere_chart(int n) {
    std::vector<double> lo(n, 0.0), hi(n, pi);
    std::vector<bool> per(n, false);
    hi[n - 1] = 2 * pi;
    per[n - 1] = true;
    return Chart("S" + std::to_string(n), lo, hi, per);
}

struct Piece {
    int dim = 0;
    double chi = 1.0;
    std::optional<Chart> chart;
    MetricFn metric;
};

// Unit round spheres, the flat 3-torus of side 2 pi, and the point.
Piece piece(const std::string& name) {
    Piece p;
    if (name == "point") return p;
    if (name == "T3") {
        p.dim = 3;
        p.chi = 0.0;
        p.chart = Chart("T3", std::vector<double>(3, 0.0), std::vector<double>(3, 2 * pi), std::vector<bool>(3, true));
        p.metric = [](const Vec&) { return Mat(Mat::Identity(3, 3)); };
        return p;
    }
    const int n = name[1] - '0';
    p.dim = n;
    p.chi = n % 2 ? 0.0 : 2.0;
    if (n == 1) {
        p.chart = Chart("S1", {0.0}, {2 * pi}, {true});
        p.metric = [](const Vec&) { return Mat(Mat::Identity(1, 1)); };
    } else {
        p.chart = sphere_chart(n);
        p.metric = [n](const Vec& y) { return round_sphere(n, y); };
    }
    return p;
}

MetricField piece_field(const Piece& p) { return field(*p.chart, p.metric); }

Mat blockdiag(const Mat& a, const Mat& b) {
    Mat g = Mat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    g.topLeftCorner(a.rows(), a.cols()) = a;
    g.bottomRightCorner(b.rows(), b.cols()) = b;
    return g;
}

CollarMetric collar(Chart boundary, double lo, double hi, std::function<Mat(double, const Vec&)> eval, int epsilon,
                    int end, std::string family) {
    CollarMetric c;
    c.boundary = std::move(boundary);
    c.r_lower = lo;
    c.r_upper = hi;
    c.eval = std::move(eval);
    c.epsilon = epsilon;
    c.boundary_end = end;
    c.family = std::move(family);
    c.fd_order = kFdOrder;
    c.validate();
    return c;
}

MetricField radial_piece(const CollarMetric& c, double lo, double hi) {
    CollarMetric d = c;
    d.r_lower = lo;
    d.r_upper = hi;
    return d.total_metric();
}

ParamSpec real(std::string name, std::string def, double lo, double hi, std::string doc) {
    return ParamSpec{std::move(name), K::real, std::move(def), lo, hi, {}, std::move(doc)};
}
ParamSpec integer(std::string name, std::string def, double lo, double hi, std::string doc) {
    return ParamSpec{std::move(name), K::integer, std::move(def), lo, hi, {}, std::move(doc)};
}
ParamSpec choice(std::string name, std::string def, std::vector<std::string> options, std::string doc) {
    return ParamSpec{std::move(name), K::choice, std::move(def), 0, 0, std::move(options), std::move(doc)};
}

std::vector<CatalogEntry> build_entries() {
    return {
        {"sphere", "round sphere S^n of radius rho", {integer("n", "2", 1, 8, "dimension"), real("rho", "1", 1e-3, 1e3, "radius")}},
        {"flat_torus", "flat torus R^n / (L Z)^n", {integer("n", "2", 1, 8, "dimension"), real("L", "1", 1e-3, 1e3, "period")}},
        {"disk",
         "geodesic ball of radius rho in the space form of curvature c, polar form",
         {integer("k", "1", 1, 3, "half the dimension"), real("rho", "1", 1e-3, 1e3, "radius"),
          real("c", "0", 0, 1e3, "constant curvature, c rho^2 < pi^2")}},
        {"cone",
         "dr^2 + theta^2 r^2 (1 + a r^p) h over the link, r in (0, 1)",
         {choice("link", "S1", {"S1", "S3", "T3"}, "link N"), real("theta", "1", 1e-3, 10, "inclination"),
          real("a", "0", -0.5, 10, "perturbation amplitude"), integer("p", "2", 1, 8, "perturbation order")}},
        {"geometric_cone",
         "dr^2 + (theta r)^2 h over the link, r in (0, 1)",
         {choice("link", "S1", {"S1", "S3", "T3"}, "link N"), real("theta", "1", 1e-3, 10, "inclination")}},
        {"perturbed_cone",
         "dr^2 + theta^2 (r^2 + a r^{2+p}) h over the link",
         {choice("link", "S1", {"S1", "S3", "T3"}, "link N"), real("theta", "1", 1e-3, 10, "inclination"),
          real("a", "1", -0.5, 10, "perturbation amplitude"), integer("p", "2", 1, 8, "perturbation order")}},
        {"football", "round S^2 with the rotation group of order p acting about the poles",
         {integer("p", "2", 1, 1000, "order of the isotropy at each pole")}},
        {"lens_cone", "cone of inclination 1 over S^{2k-1} / Z_order",
         {integer("k", "2", 1, 3, "half the cone dimension"), integer("order", "2", 1, 1000, "order of the group")}},
        {"catenoid", "minimal catenoid: cosh^2 s (ds^2 + dtheta^2), ends dr^2 + (1 + r^2) dtheta^2", {}},
        {"edge_product",
         "dr^2 + r^2 (1 + warp r)^2 (1 + twist cos y_0)^2 g_F + g_B near an edge with base B and fiber F",
         {choice("base", "S2", {"S1", "S2", "S3"}, "base B"), choice("fiber", "S1", {"S1", "S2", "S3", "T3"}, "fiber F"),
          real("warp", "0", -0.5, 10, "radial warping of the fiber"),
          real("twist", "0", 0, 0.9, "base-dependent scaling of the fiber")}},
        {"edge_horizontal",
         "dr^2 + r^2 g_F + (1 + lambda r (1 + 0.5 cos y_0)) g_B: horizontal variation of the edge model",
         {choice("base", "S2", {"S2"}, "base B"), choice("fiber", "S1", {"S1"}, "fiber F"),
          real("lambda", "0.4", -0.9, 0.9, "size of d_r g^B")}},
        {"fibered_product",
         "dr^2 + g_F + r^2 g_B on r > 1: fibered-boundary end",
         {choice("base", "S2", {"S1", "S2", "S3"}, "base B"), choice("fiber", "S1", {"point", "S1", "S2"}, "fiber F")}},
        {"first_order_cone",
         "closed surface dr^2 + f(r)^2 dtheta^2, f = sin r (1 + a sin r cos^4(r/2)), conical first-order germ r (1 + a r)",
         {real("a", "0.3", -0.5, 0.5, "first-order coefficient")}},
        {"surface_of_revolution", "sphere dr^2 + (sin r (1 + b sin^2 r))^2 dtheta^2",
         {real("b", "0.3", -0.5, 2, "profile deformation")}},
        {"conformal_torus",
         "pair g0 = e^{2v} g, g1 = e^{2u} g on the flat 2-torus of side 2 pi, v = 0.2 cos x, u = amp sin x cos y",
         {real("amp", "0.3", -1, 1, "amplitude of u")}},
    };
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string& key, const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw RegistryError("parameter " + key + ": not a number: '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw RegistryError("parameter " + key + ": not a number: '" + s + "'");
    return v;
}

ParamMap resolve_params(const CatalogEntry& e, const ParamMap& given) {
    ParamMap out;
    for (const auto& [k, v] : given) {
        bool known = false;
        for (const auto& p : e.params) known = known || p.name == k;
        if (!known) throw RegistryError(e.name + ": unknown parameter '" + k + "'");
    }
    for (const auto& p : e.params) {
        auto it = given.find(p.name);
        const std::string raw = it == given.end() ? p.default_value : it->second;
        if (p.kind == K::choice) {
            bool ok = false;
            for (const auto& c : p.choices) ok = ok || c == raw;
            if (!ok) throw RegistryError(e.name + ": invalid value '" + raw + "' for " + p.name);
            out[p.name] = raw;
            continue;
        }
        const double v = parse_number(p.name, raw);
        if (p.kind == K::integer && v != std::floor(v))
            throw RegistryError(e.name + ": parameter " + p.name + " must be an integer");
        if (v < p.min || v > p.max)
            throw RegistryError(e.name + ": parameter " + p.name + " out of range [" + format_number(p.min) + ", " +
                                format_number(p.max) + "]");
        out[p.name] = format_number(v);
    }
    return out;
}

void build_sphere(GeometrySpec& g) {
    const int n = static_cast<int>(g.param("n"));
    const double rho = g.param("rho");
    g.dim = n;
    const Piece s = piece("S" + std::to_string(n));
    if (n == 1) {
        g.charts.push_back(field(*s.chart, [rho](const Vec&) { return Mat(Mat::Constant(1, 1, rho * rho)); }));
    } else {
        g.charts.push_back(field(*s.chart, [n, rho](const Vec& y) { return Mat(rho * rho * round_sphere(n, y)); }));
    }
    g.chi_ref = n % 2 ? 0.0 : 2.0;
}

void build_flat_torus(GeometrySpec& g) {
    const int n = static_cast<int>(g.param("n"));
    const double L = g.param("L");
    g.dim = n;
    g.charts.push_back(field(Chart("T" + std::to_string(n), std::vector<double>(n, 0.0), std::vector<double>(n, L),
                                   std::vector<bool>(n, true)),
                             [n](const Vec&) { return Mat(Mat::Identity(n, n)); }));
    g.chi_ref = 0.0;
}

double space_form_sn(double c, double r) { return c == 0.0 ? r : std::sin(std::sqrt(c) * r) / std::sqrt(c); }

void build_disk(GeometrySpec& g) {
    const int k = static_cast<int>(g.param("k"));
    const double rho = g.param("rho");
    const double c = g.param("c");
    if (c * rho * rho >= pi * pi) throw RegistryError("disk: need c rho^2 < pi^2");
    const int m = 2 * k - 1;
    g.dim = 2 * k;
    const Piece s = piece("S" + std::to_string(m));
    const MetricFn h = s.metric;
    auto eval = [h, c](double r, const Vec& y) {
        const double f = space_form_sn(c, r);
        return Mat(f * f * h(y));
    };
    const double room = c > 0.0 ? std::min(rho, pi / std::sqrt(c) - rho) : rho;
    const CollarMetric col =
        collar(*s.chart, rho - 0.5 * room, rho + 0.5 * room, eval, kEpsilonBoundary, 1, "boundary");
    g.charts.push_back(radial_piece(col, 0.0, rho));
    g.strata.push_back(Stratum{"boundary", StratumKind::boundary, col, rho, 0.0});
    g.chi_ref = 1.0;
    g.data["rho"] = rho;
}

void build_cone_like(GeometrySpec& g, double theta, double a, int p) {
    const std::string link = g.choice("link");
    const Piece s = piece(link);
    g.dim = s.dim + 1;
    const MetricFn h = s.metric;
    auto eval = [h, theta, a, p](double r, const Vec& y) {
        return Mat(theta * theta * r * r * (1.0 + a * std::pow(r, p)) * h(y));
    };
    const CollarMetric col = collar(*s.chart, 0.0, 1.0, eval, kEpsilonBoundary, -1, "cone");
    g.charts.push_back(col.total_metric());
    g.strata.push_back(Stratum{"tip", StratumKind::cone_tip, col, 0.0, 0.4});
    FibrationData f;
    f.base_dim = 0;
    f.fiber_dim = s.dim;
    f.fiber = piece_field(s);
    for (int i = 0; i < s.dim; ++i) f.vertical_axes.push_back(i);
    f.chi_fiber = s.chi;
    f.chi_base = 1.0;
    g.fibration = f;
    g.chi_ref = 1.0;
    g.chi_pieces["link"] = s.chi;
    g.data["theta"] = theta;
    g.data["a"] = a;
    g.data["p"] = p;
}

void build_football(GeometrySpec& g) {
    const int p = static_cast<int>(g.param("p"));
    g.dim = 2;
    g.charts.push_back(field(sphere_chart(2), [](const Vec& y) { return round_sphere(2, y); }));
    g.symmetry_weight = SymmetryWeight{1, p};
    g.chi_ref = 2.0;
    g.chi_pieces["strata"] = 2.0;
    g.chi_pieces["stratum_order"] = p;
    g.chi_pieces["chi_stratum"] = 1.0;
}

void build_lens_cone(GeometrySpec& g) {
    const int k = static_cast<int>(g.param("k"));
    const int order = static_cast<int>(g.param("order"));
    const Piece s = piece("S" + std::to_string(2 * k - 1));
    g.dim = 2 * k;
    const MetricFn h = s.metric;
    const CollarMetric col =
        collar(*s.chart, 0.0, 1.0, [h](double r, const Vec& y) { return Mat(r * r * h(y)); }, kEpsilonBoundary, -1, "cone");
    g.charts.push_back(col.total_metric());
    g.strata.push_back(Stratum{"tip", StratumKind::cone_tip, col, 0.0, 0.4});
    g.symmetry_weight = SymmetryWeight{1, order};
    g.chi_ref = 1.0;
    g.data["theta"] = 1.0;
}

void build_catenoid(GeometrySpec& g) {
    g.dim = 2;
    const double S = kCatenoidHalfLength;
    g.charts.push_back(field(Chart("catenoid", {-S, 0.0}, {S, 2 * pi}, {false, true}), [](const Vec& x) {
        const double c = std::cosh(x(0));
        return Mat(c * c * Mat::Identity(2, 2));
    }));
    const Chart s1("S1", {0.0}, {2 * pi}, {true});
    const CollarMetric end = collar(
        s1, 1.0, kFarRadius, [](double r, const Vec&) { return Mat(Mat::Constant(1, 1, 1.0 + r * r)); }, kEpsilonFibered,
        1, "fibered");
    g.strata.push_back(Stratum{"end+", StratumKind::fibered_end, end, 0.0, 0.4});
    g.strata.push_back(Stratum{"end-", StratumKind::fibered_end, end, 0.0, 0.4});
    FibrationData f;
    f.base_dim = 1;
    f.fiber_dim = 0;
    f.base = field(s1, [](const Vec&) { return Mat(Mat::Identity(1, 1)); });
    f.horizontal_axes = {0};
    f.chi_fiber = 1.0;
    f.chi_base = 0.0;
    g.fibration = f;
    g.chi_ref = 0.0;
    g.chi_pieces["fiber"] = 1.0;
    g.data["total_curvature"] = -4 * pi;
}

void build_edge(GeometrySpec& g, const std::string& base, const std::string& fiber, double warp, double twist,
                double lambda) {
    const Piece B = piece(base);
    const Piece F = piece(fiber);
    if (B.dim + F.dim + 1 > 8) throw RegistryError(g.builtin + ": total dimension exceeds 8");
    g.dim = B.dim + F.dim + 1;
    const int b = B.dim;
    const int f = F.dim;
    const MetricFn gb = B.metric;
    const MetricFn gf = F.metric;
    auto eval = [=](double r, const Vec& y) {
        const Vec yb = y.head(b);
        const Vec yf = y.tail(f);
        const double w = r * (1.0 + warp * r) * (1.0 + twist * std::cos(y(0)));
        const double hb = 1.0 + lambda * r * (1.0 + 0.5 * std::cos(y(0)));
        return blockdiag(hb * gb(yb), w * w * gf(yf));
    };
    const Chart N = Chart::product(*B.chart, *F.chart, base + "x" + fiber);
    const CollarMetric col = collar(N, 0.0, 1.0, eval, kEpsilonEdge, -1, "edge");
    g.charts.push_back(col.total_metric());
    g.strata.push_back(Stratum{"edge", StratumKind::edge, col, 0.0, 0.4});
    FibrationData fd;
    fd.base_dim = b;
    fd.fiber_dim = f;
    fd.base = piece_field(B);
    fd.fiber = piece_field(F);
    for (int i = 0; i < b; ++i) fd.horizontal_axes.push_back(i);
    for (int i = 0; i < f; ++i) fd.vertical_axes.push_back(b + i);
    fd.chi_base = B.chi;
    fd.chi_fiber = F.chi;
    fd.product_split = twist == 0.0;
    g.fibration = fd;
    if (lambda != 0.0)
        g.horizontal_variation = [gb, lambda](const Vec& y) { return Mat(lambda * (1.0 + 0.5 * std::cos(y(0))) * gb(y)); };
    // B times the cone over F, which is contractible
    g.chi_ref = B.chi;
    g.chi_pieces["base"] = B.chi;
    g.chi_pieces["fiber"] = F.chi;
    g.data["warp"] = warp;
    g.data["twist"] = twist;
    g.data["lambda"] = lambda;
}

void build_fibered_product(GeometrySpec& g) {
    const Piece B = piece(g.choice("base"));
    const Piece F = piece(g.choice("fiber"));
    g.dim = B.dim + F.dim + 1;
    const int b = B.dim;
    const int f = F.dim;
    const MetricFn gb = B.metric;
    const MetricFn gf = F.metric;
    const Chart N = f == 0 ? *B.chart : Chart::product(*B.chart, *F.chart, g.choice("base") + "x" + g.choice("fiber"));
    auto eval = [=](double r, const Vec& y) {
        const Mat base = r * r * gb(y.head(b));
        return f == 0 ? base : blockdiag(base, gf(y.tail(f)));
    };
    const CollarMetric col = collar(N, 1.0, kFarRadius, eval, kEpsilonFibered, 1, "fibered");
    g.strata.push_back(Stratum{"end", StratumKind::fibered_end, col, 0.0, 0.4});
    FibrationData fd;
    fd.base_dim = b;
    fd.fiber_dim = f;
    fd.base = piece_field(B);
    if (F.chart) fd.fiber = piece_field(F);
    for (int i = 0; i < b; ++i) fd.horizontal_axes.push_back(i);
    for (int i = 0; i < f; ++i) fd.vertical_axes.push_back(b + i);
    fd.chi_base = B.chi;
    fd.chi_fiber = F.chi;
    g.fibration = fd;
    g.chi_ref = 0.0;
    g.chi_pieces["base"] = B.chi;
    g.chi_pieces["fiber"] = F.chi;
}

void build_first_order_cone(GeometrySpec& g) {
    const double a = g.param("a");
    g.dim = 2;
    auto prof = [a](double r) {
        const double c = std::cos(0.5 * r);
        return std::sin(r) * (1.0 + a * std::sin(r) * c * c * c * c);
    };
    const Chart s1("S1", {0.0}, {2 * pi}, {true});
    const CollarMetric col = collar(
        s1, 0.0, pi, [prof](double r, const Vec&) { return Mat(Mat::Constant(1, 1, prof(r) * prof(r))); },
        kEpsilonBoundary, -1, "cone");
    g.charts.push_back(col.total_metric());
    g.strata.push_back(Stratum{"tip", StratumKind::cone_tip, col, 0.0, 0.4});
    FibrationData f;
    f.fiber_dim = 1;
    f.fiber = field(s1, [](const Vec&) { return Mat(Mat::Identity(1, 1)); });
    f.vertical_axes = {0};
    f.chi_fiber = 0.0;
    f.chi_base = 1.0;
    g.fibration = f;
    g.chi_ref = 1.0;
    g.data["a"] = a;
}

void build_surface_of_revolution(GeometrySpec& g) {
    const double b = g.param("b");
    g.dim = 2;
    g.charts.push_back(field(Chart("revolution", {0.0, 0.0}, {pi, 2 * pi}, {false, true}), [b](const Vec& x) {
        const double s = std::sin(x(0));
        const double f = s * (1.0 + b * s * s);
        Mat m = Mat::Identity(2, 2);
        m(1, 1) = f * f;
        return m;
    }));
    g.chi_ref = 2.0;
}

void build_conformal_torus(GeometrySpec& g) {
    const double amp = g.param("amp");
    g.dim = 2;
    const Chart t("T2", {0.0, 0.0}, {2 * pi, 2 * pi}, {true, true});
    g.charts.push_back(field(t, [amp](const Vec& x) {
        return Mat(std::exp(2.0 * amp * std::sin(x(0)) * std::cos(x(1))) * Mat::Identity(2, 2));
    }));
    g.partner = field(t, [](const Vec& x) { return Mat(std::exp(0.4 * std::cos(x(0))) * Mat::Identity(2, 2)); });
    g.chi_ref = 0.0;
}

GeometrySpec build(const std::string& builtin, const std::string& name, const ParamMap& params) {
    const CatalogEntry& e = catalog_entry(builtin);
    GeometrySpec g;
    g.name = name;
    g.builtin = builtin;
    g.params = resolve_params(e, params);
    if (builtin == "sphere") build_sphere(g);
    else if (builtin == "flat_torus") build_flat_torus(g);
    else if (builtin == "disk") build_disk(g);
    else if (builtin == "cone") build_cone_like(g, g.param("theta"), g.param("a"), static_cast<int>(g.param("p")));
    else if (builtin == "geometric_cone") build_cone_like(g, g.param("theta"), 0.0, 2);
    else if (builtin == "perturbed_cone")
        build_cone_like(g, g.param("theta"), g.param("a"), static_cast<int>(g.param("p")));
    else if (builtin == "football") build_football(g);
    else if (builtin == "lens_cone") build_lens_cone(g);
    else if (builtin == "catenoid") build_catenoid(g);
    else if (builtin == "edge_product")
        build_edge(g, g.choice("base"), g.choice("fiber"), g.param("warp"), g.param("twist"), 0.0);
    else if (builtin == "edge_horizontal") build_edge(g, g.choice("base"), g.choice("fiber"), 0.0, 0.0, g.param("lambda"));
    else if (builtin == "fibered_product") build_fibered_product(g);
    else if (builtin == "first_order_cone") build_first_order_cone(g);
    else if (builtin == "surface_of_revolution") build_surface_of_revolution(g);
    else if (builtin == "conformal_torus") build_conformal_torus(g);
    return g;
}

struct Registry {
    std::mutex mu;
    std::map<std::string, CustomGeometry> custom;
};

Registry& registry() {
    static Registry r;
    return r;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_list(const std::string& key, const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(parse_number(key, trim(item)));
        } catch (const RegistryError& e) {
            throw ConfigError(e.what());
        }
    }
    return out;
}

}  // namespace

const char* stratum_kind_name(StratumKind k) {
    switch (k) {
        case StratumKind::boundary: return "boundary";
        case StratumKind::cone_tip: return "cone_tip";
        case StratumKind::edge: return "edge";
        case StratumKind::fibered_end: return "fibered_end";
    }
    return "?";
}

double GeometrySpec::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw RegistryError(name + ": no parameter '" + key + "'");
    return parse_number(key, it->second);
}

const std::string& GeometrySpec::choice(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw RegistryError(name + ": no parameter '" + key + "'");
    return it->second;
}

const std::vector<CatalogEntry>& catalog_list() {
    static const std::vector<CatalogEntry> entries = build_entries();
    return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
    for (const auto& e : catalog_list())
        if (e.name == name) return e;
    throw RegistryError("unknown geometry '" + name + "'");
}

GeometrySpec catalog_get(const std::string& name, const ParamMap& params) {
    for (const auto& e : catalog_list())
        if (e.name == name) return build(name, name, params);
    CustomGeometry c;
    {
        auto& r = registry();
        std::lock_guard lock(r.mu);
        auto it = r.custom.find(name);
        if (it == r.custom.end()) throw RegistryError("unknown geometry '" + name + "'");
        c = it->second;
    }
    ParamMap merged = c.params;
    for (const auto& [k, v] : params) merged[k] = v;
    GeometrySpec g = build(c.builtin, c.name, merged);
    if (!c.lower.empty() || !c.upper.empty()) {
        if (g.charts.empty()) throw RegistryError(name + ": builtin has no interior chart to override");
        Chart& ch = g.charts.front().chart;
        std::vector<double> lo = c.lower.empty() ? ch.lower : c.lower;
        std::vector<double> hi = c.upper.empty() ? ch.upper : c.upper;
        if (static_cast<int>(lo.size()) != ch.dim || static_cast<int>(hi.size()) != ch.dim)
            throw RegistryError(name + ": chart bounds must have " + std::to_string(ch.dim) + " entries");
        try {
            ch = Chart(ch.name, lo, hi, ch.periodic);
        } catch (const Error& e) {
            throw RegistryError(name + ": " + e.what());
        }
    }
    return g;
}

CustomGeometry parse_geometry_config(const std::string& text) {
    CustomGeometry g;
    bool schema = false;
    std::stringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (key == "schema") {
            if (value != "1") throw ConfigError("unsupported schema version '" + value + "'");
            schema = true;
        } else if (key == "name") {
            g.name = value;
        } else if (key == "builtin") {
            g.builtin = value;
        } else if (key == "chart.lower") {
            g.lower = parse_list(key, value);
        } else if (key == "chart.upper") {
            g.upper = parse_list(key, value);
        } else {
            if (g.params.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
            g.params[key] = value;
        }
    }
    if (!schema) throw ConfigError("missing schema version");
    if (g.name.empty() || g.builtin.empty()) throw ConfigError("name and builtin are required");
    return g;
}

CustomGeometry load_geometry_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read geometry config '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_geometry_config(ss.str());
}

void register_geometry(const CustomGeometry& g) {
    for (const auto& e : catalog_list())
        if (e.name == g.name) throw ConfigError("geometry name '" + g.name + "' shadows a builtin");
    try {
        catalog_entry(g.builtin);
    } catch (const RegistryError& e) {
        throw ConfigError(e.what());
    }
    auto& r = registry();
    {
        std::lock_guard lock(r.mu);
        r.custom[g.name] = g;
    }
    try {
        catalog_get(g.name);
    } catch (const Error& e) {
        std::lock_guard lock(r.mu);
        r.custom.erase(g.name);
        throw ConfigError(std::string("geometry config: ") + e.what());
    }
}

void clear_registered_geometries() {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    r.custom.clear();
}

std::vector<std::string> registered_geometries() {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    std::vector<std::string> out;
    for (const auto& [k, v] : r.custom) out.push_back(k);
    return out;
}

}  // namespace gblab
