#pragma once

#include <span>
#include <string>
#include <vector>

namespace gblab {

// Coordinate box with optional periodic axes.
struct Chart {
    std::string name;
    int dim = 0;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<bool> periodic;

    Chart() = default;
    Chart(std::string name, std::vector<double> lower, std::vector<double> upper, std::vector<bool> periodic);

    double extent(int axis) const { return upper[axis] - lower[axis]; }
    double max_extent() const;
    // Strictly inside along non-periodic axes.
    bool interior(std::span<const double> x) const;
    // Distance to the nearest non-periodic face along `axis`; infinite for periodic axes.
    double face_distance(std::span<const double> x, int axis) const;
    void validate() const;

    static Chart product(const Chart& a, const Chart& b, std::string name = {});
};

}  // namespace gblab
