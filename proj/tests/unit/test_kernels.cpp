#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "doctest.h"
#include "gblab/kernels/kernels.hpp"

using namespace gblab::kernels;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng) * std::exp(10.0 * u(rng));
    return v;
}

}  // namespace

TEST_CASE("split point lands on a leaf boundary inside the range") {
    for (std::size_t n = kLeaf + 1; n < 5000; ++n) {
        const std::size_t m = split_point(n);
        CHECK(m % kLeaf == 0);
        CHECK(m > 0);
        CHECK(m < n);
    }
}

TEST_CASE("scalar reduction tree") {
    const std::vector<double> ones(100, 1.0);
    CHECK(scalar::pairwise_sum(ones) == 100.0);
    CHECK(scalar::pairwise_sum(std::vector<double>{}) == 0.0);
    const std::vector<double> w(7, 0.5);
    CHECK(scalar::weighted_sum(w, std::vector<double>(7, 2.0)) == 7.0);
}

TEST_CASE("avx2 variants are bit-identical to the scalar reference") {
    if (!avx2_available()) {
        MESSAGE("avx2 not available; equivalence test skipped");
        return;
    }
    std::mt19937_64 rng(2024);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 31u, 32u, 33u, 63u, 64u, 65u, 100u, 1000u, 4097u, 65536u}) {
        const auto a = random_vec(n, rng);
        const auto b = random_vec(n, rng);
        CHECK(same_bits(scalar::pairwise_sum(a), avx2::pairwise_sum(a)));
        CHECK(same_bits(scalar::weighted_sum(a, b), avx2::weighted_sum(a, b)));
        std::vector<double> o1(n), o2(n);
        scalar::axpby(1.7, a, -0.3, b, o1);
        avx2::axpby(1.7, a, -0.3, b, o2);
        for (std::size_t i = 0; i < n; ++i) CHECK(same_bits(o1[i], o2[i]));
    }
}

TEST_CASE("dispatch reports a known variant") {
    const Isa isa = active_isa();
    CHECK((isa == Isa::scalar || isa == Isa::avx2));
    const std::vector<double> v{1.0, 2.0, 3.0};
    CHECK(pairwise_sum(v) == 6.0);
}
