#include <immintrin.h>

#include "gblab/errors.hpp"
#include "gblab/kernels/kernels.hpp"

#define GBLAB_AVX2 __attribute__((target("avx2")))

namespace gblab::kernels::avx2 {
namespace {

GBLAB_AVX2 __m256i tail_mask(std::size_t r) {
    const __m256i lanes = _mm256_set_epi64x(3, 2, 1, 0);
    return _mm256_cmpgt_epi64(_mm256_set1_epi64x(static_cast<long long>(r)), lanes);
}

GBLAB_AVX2 double horizontal(__m256d acc) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

GBLAB_AVX2 double leaf_sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    if (i < n) acc = _mm256_add_pd(acc, _mm256_maskload_pd(x + i, tail_mask(n - i)));
    return horizontal(acc);
}

GBLAB_AVX2 double leaf_weighted(const double* w, const double* f, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(f + i)));
    if (i < n) {
        const __m256i m = tail_mask(n - i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_maskload_pd(w + i, m), _mm256_maskload_pd(f + i, m)));
    }
    return horizontal(acc);
}

GBLAB_AVX2 double tree_sum(const double* x, std::size_t n) {
    if (n <= kLeaf) return leaf_sum(x, n);
    const std::size_t m = split_point(n);
    return tree_sum(x, m) + tree_sum(x + m, n - m);
}

GBLAB_AVX2 double tree_weighted(const double* w, const double* f, std::size_t n) {
    if (n <= kLeaf) return leaf_weighted(w, f, n);
    const std::size_t m = split_point(n);
    return tree_weighted(w, f, m) + tree_weighted(w + m, f + m, n - m);
}

}  // namespace

GBLAB_AVX2 double pairwise_sum(std::span<const double> x) { return tree_sum(x.data(), x.size()); }

GBLAB_AVX2 double weighted_sum(std::span<const double> w, std::span<const double> f) {
    if (w.size() != f.size()) throw ShapeError("weighted_sum: length mismatch");
    return tree_weighted(w.data(), f.data(), w.size());
}

GBLAB_AVX2 void axpby(double s, std::span<const double> a, double t, std::span<const double> b, std::span<double> out) {
    if (a.size() != b.size() || a.size() != out.size()) throw ShapeError("axpby: length mismatch");
    const std::size_t n = a.size();
    const __m256d vs = _mm256_set1_pd(s);
    const __m256d vt = _mm256_set1_pd(t);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d u = _mm256_mul_pd(vs, _mm256_loadu_pd(a.data() + i));
        const __m256d v = _mm256_mul_pd(vt, _mm256_loadu_pd(b.data() + i));
        _mm256_storeu_pd(out.data() + i, _mm256_add_pd(u, v));
    }
    for (; i < n; ++i) {
        const double u = s * a[i];
        const double v = t * b[i];
        out[i] = u + v;
    }
}

}  // namespace gblab::kernels::avx2
