#include "gblab/errors.hpp"
#include "gblab/kernels/kernels.hpp"

namespace gblab::kernels::scalar {
namespace {

double leaf_sum(const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int l = 0; l < 4; ++l) acc[l] = acc[l] + x[i + l];
    if (i < n)
        for (std::size_t l = 0; l < 4; ++l) acc[l] = acc[l] + (i + l < n ? x[i + l] : 0.0);
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double leaf_weighted(const double* w, const double* f, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        for (int l = 0; l < 4; ++l) acc[l] = acc[l] + w[i + l] * f[i + l];
    if (i < n)
        for (std::size_t l = 0; l < 4; ++l) {
            const double prod = i + l < n ? w[i + l] * f[i + l] : 0.0 * 0.0;
            acc[l] = acc[l] + prod;
        }
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double tree_sum(const double* x, std::size_t n) {
    if (n <= kLeaf) return leaf_sum(x, n);
    const std::size_t m = split_point(n);
    return tree_sum(x, m) + tree_sum(x + m, n - m);
}

double tree_weighted(const double* w, const double* f, std::size_t n) {
    if (n <= kLeaf) return leaf_weighted(w, f, n);
    const std::size_t m = split_point(n);
    return tree_weighted(w, f, m) + tree_weighted(w + m, f + m, n - m);
}

}  // namespace

double pairwise_sum(std::span<const double> x) { return tree_sum(x.data(), x.size()); }

double weighted_sum(std::span<const double> w, std::span<const double> f) {
    if (w.size() != f.size()) throw ShapeError("weighted_sum: length mismatch");
    return tree_weighted(w.data(), f.data(), w.size());
}

void axpby(double s, std::span<const double> a, double t, std::span<const double> b, std::span<double> out) {
    if (a.size() != b.size() || a.size() != out.size()) throw ShapeError("axpby: length mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double u = s * a[i];
        const double v = t * b[i];
        out[i] = u + v;
    }
}

}  // namespace gblab::kernels::scalar
