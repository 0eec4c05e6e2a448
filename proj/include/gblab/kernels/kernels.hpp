#pragma once

#include <cstddef>
#include <span>

namespace gblab::kernels {

enum class Isa { scalar, avx2 };

// Reduction tree shared by every variant: leaves of at most kLeaf entries are summed in four
// interleaved lanes (lane l takes entries l, l+4, ...; a short tail pads with +0.0), lanes are
// combined as (l0 + l1) + (l2 + l3); longer ranges split at the first multiple of kLeaf past n/2.
inline constexpr std::size_t kLeaf = 32;

// Variant picked at first use; GBLAB_SIMD=scalar forces the reference kernels.
Isa active_isa();
const char* isa_name(Isa isa);
bool avx2_available();

double pairwise_sum(std::span<const double> x);
double weighted_sum(std::span<const double> w, std::span<const double> f);
void axpby(double s, std::span<const double> a, double t, std::span<const double> b, std::span<double> out);

namespace scalar {
double pairwise_sum(std::span<const double> x);
double weighted_sum(std::span<const double> w, std::span<const double> f);
void axpby(double s, std::span<const double> a, double t, std::span<const double> b, std::span<double> out);
}  // namespace scalar

namespace avx2 {
double pairwise_sum(std::span<const double> x);
double weighted_sum(std::span<const double> w, std::span<const double> f);
void axpby(double s, std::span<const double> a, double t, std::span<const double> b, std::span<double> out);
}  // namespace avx2

constexpr std::size_t split_point(std::size_t n) { return ((n / 2 + kLeaf - 1) / kLeaf) * kLeaf; }

}  // namespace gblab::kernels
