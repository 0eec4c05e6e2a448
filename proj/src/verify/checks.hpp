#pragma once

#include <functional>
#include <optional>
#include <string>

#include "gblab/invariants/boundary_values.hpp"
#include "gblab/quadrature/quadrature.hpp"
#include "gblab/verify/verify.hpp"

namespace gblab::verify::detail {

struct Ctx {
    Executor ex;
    int level = 1;
    std::optional<int> eps;
    double tol = 0.0;
    long nodes = 0;

    Ctx(const RunOptions& o, int lvl, double t);
};

struct Limit {
    double value = 0.0;
    double first = 0.0;  // sample at r0 (u0 for ends)
    Extrapolation fit;
};

double integrate_density(Ctx& c, const Chart& chart, const std::function<double(const Vec&)>& f, int base = 8);
double integrate_density(Ctx& c, const MetricField& m, const PointDensity& d, int base = 8);
double pf_integral(Ctx& c, const GeometrySpec& g);
CollarMetric collar_of(const Ctx& c, const Stratum& s);
double slice_integral(Ctx& c, const CollarMetric& col, double r);
Limit stratum_limit(Ctx& c, const Stratum& s, CheckResult& res, const std::string& label = "");

const std::vector<CheckInfo>& check_infos();
// Raises ConfigError for structural incompatibilities; other failures yield a failed result.
CheckResult execute(const CheckInstance& in, const GeometrySpec* g, const RunOptions& opt);

}  // namespace gblab::verify::detail
