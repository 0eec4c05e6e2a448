#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gblab::mi {

// Strictly increasing multi-indices over {0, ..., n-1} stored as bitmasks.
using Mask = std::uint32_t;

inline constexpr int kMaxDim = 8;

constexpr std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

constexpr Mask full(int n) { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1u); }

constexpr int popcount(Mask m) {
    int c = 0;
    while (m) {
        m &= m - 1u;
        ++c;
    }
    return c;
}

// Colexicographic rank: sum over sorted elements c_1 < ... < c_p of C(c_i, i).
constexpr std::size_t rank(Mask m) {
    std::size_t r = 0;
    int i = 0;
    for (int bit = 0; m; ++bit) {
        if (m & (Mask{1} << bit)) {
            ++i;
            r += static_cast<std::size_t>(binomial(bit, i));
            m &= ~(Mask{1} << bit);
        }
    }
    return r;
}

// Sign of the permutation sorting the concatenation (a, b); 0 when a and b overlap.
constexpr int merge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inversions = 0;
    for (int bit = 0; b >> bit; ++bit) {
        if (b & (Mask{1} << bit)) inversions += popcount(a >> (bit + 1));
    }
    return (inversions & 1) ? -1 : 1;
}

// All p-subsets of {0..n-1}, listed in colex order (position == rank).
const std::vector<Mask>& subsets(int n, int p);

struct Pair {
    std::uint16_t a;  // rank of the left index set
    std::uint16_t b;  // rank of the right index set
    std::uint16_t c;  // rank of the union
    std::int8_t sign;
};

// Every disjoint (p-subset, q-subset) pair of {0..n-1} with the sign of their merge.
const std::vector<Pair>& disjoint_pairs(int n, int p, int q);

}  // namespace gblab::mi
