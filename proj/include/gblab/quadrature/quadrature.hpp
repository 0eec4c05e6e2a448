#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gblab/geometry/chart.hpp"
#include "gblab/quadrature/executor.hpp"

namespace gblab {

struct AxisRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    bool periodic = false;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
AxisRule gauss_legendre(int n);
AxisRule trapezoid_rule(double lo, double hi, int count);
AxisRule gauss_legendre_panels(double lo, double hi, int panels, int per_panel);

struct MeshSpec {
    std::vector<AxisRule> axes;
    int level = 1;

    // Level l: periodic axes get base * 2^(l-1) trapezoid nodes, other axes 2^(l-1)
    // Gauss-Legendre panels of `base` nodes each.
    static MeshSpec for_chart(const Chart& chart, int level, int base = 8);
    static MeshSpec for_chart(const Chart& chart, int level, const std::vector<int>& base);

    std::vector<int> node_counts() const;
    std::size_t total_nodes() const;
};

using Density = std::function<double(std::span<const double>)>;

// Tensor-product rule; the weighted sum uses the fixed reduction tree of the kernels.
double integrate_chart(const Density& f, const Chart& chart, const MeshSpec& mesh, const Executor& ex = Executor{});

// Separable product: (integral over the base of a) * (integral over the fiber of c).
double integrate_fibers(const Chart& base, const MeshSpec& base_mesh, const Chart& fiber, const MeshSpec& fiber_mesh,
                        const Density& a, const Density& c, const Executor& ex = Executor{});

// Iterated: integral over the base of the fiber integral of F(b, f).
double integrate_fibers(const Chart& base, const MeshSpec& base_mesh, const Chart& fiber, const MeshSpec& fiber_mesh,
                        const std::function<double(std::span<const double>, std::span<const double>)>& F,
                        const Executor& ex = Executor{});

struct ConvergenceRow {
    int level = 0;
    std::size_t nodes = 0;
    double value = 0.0;
    double diff = 0.0;   // NaN on the first row
    double order = 0.0;  // NaN when not estimable
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;

    void append(int level, std::size_t nodes, double value);
    std::string to_csv() const;
};

struct LevelSample {
    double value = 0.0;
    std::size_t nodes = 0;
};

struct RefineResult {
    double value = 0.0;
    ConvergenceTable table;
    bool converged = false;
};

// Evaluates levels start, start+1, ... until the successive difference drops below tol
// or max_levels is reached.
RefineResult refine_until(const std::function<LevelSample(int)>& eval, double tol, int max_levels,
                          int start_level = 1);

struct LimitSample {
    double r = 0.0;
    double value = 0.0;
};

struct Extrapolation {
    double value = 0.0;
    int degree = 0;
    double condition = 0.0;
    bool ill_conditioned = false;
    std::string warning;
    double fit_residual = 0.0;
    std::vector<LimitSample> samples;
};

// r_i = r0 * ratio^i, i = 0..count-1.
std::vector<double> geometric_schedule(double r0, int count = 6, double ratio = 0.5);

// Least-squares polynomial in r evaluated at r = 0. Use u = 1/r for limits at infinity.
Extrapolation r_limit_extrapolate(std::span<const LimitSample> samples, int degree = 3);

}  // namespace gblab
