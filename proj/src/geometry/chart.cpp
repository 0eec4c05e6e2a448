#include "gblab/geometry/chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gblab/errors.hpp"

namespace gblab {

Chart::Chart(std::string n, std::vector<double> lo, std::vector<double> hi, std::vector<bool> per)
    : name(std::move(n)), dim(static_cast<int>(lo.size())), lower(std::move(lo)), upper(std::move(hi)),
      periodic(std::move(per)) {
    validate();
}

void Chart::validate() const {
    if (dim < 1 || dim > 8) throw ShapeError("chart '" + name + "': dimension must lie in [1, 8]");
    if (static_cast<int>(lower.size()) != dim || static_cast<int>(upper.size()) != dim ||
        static_cast<int>(periodic.size()) != dim)
        throw ShapeError("chart '" + name + "': per-axis arrays disagree in length");
    for (int a = 0; a < dim; ++a) {
        if (!std::isfinite(lower[a]) || !std::isfinite(upper[a]))
            throw DomainError("chart '" + name + "': bounds must be finite");
        if (!(lower[a] < upper[a])) throw DomainError("chart '" + name + "': lower bound not below upper bound");
    }
}

double Chart::max_extent() const {
    double m = 0.0;
    for (int a = 0; a < dim; ++a) m = std::max(m, extent(a));
    return m;
}

bool Chart::interior(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim) return false;
    for (int a = 0; a < dim; ++a) {
        if (!std::isfinite(x[a])) return false;
        if (!periodic[a] && !(x[a] > lower[a] && x[a] < upper[a])) return false;
    }
    return true;
}

double Chart::face_distance(std::span<const double> x, int axis) const {
    if (periodic[axis]) return std::numeric_limits<double>::infinity();
    return std::min(x[axis] - lower[axis], upper[axis] - x[axis]);
}

Chart Chart::product(const Chart& a, const Chart& b, std::string n) {
    std::vector<double> lo = a.lower, hi = a.upper;
    std::vector<bool> per = a.periodic;
    lo.insert(lo.end(), b.lower.begin(), b.lower.end());
    hi.insert(hi.end(), b.upper.begin(), b.upper.end());
    per.insert(per.end(), b.periodic.begin(), b.periodic.end());
    if (n.empty()) n = a.name + "x" + b.name;
    return Chart(std::move(n), std::move(lo), std::move(hi), std::move(per));
}

}  // namespace gblab
