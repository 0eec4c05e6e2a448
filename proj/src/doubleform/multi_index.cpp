#include "gblab/doubleform/multi_index.hpp"

#include <array>

#include "gblab/errors.hpp"

namespace gblab::mi {
namespace {

struct Tables {
    std::array<std::array<std::vector<Mask>, kMaxDim + 1>, kMaxDim + 1> subsets;
    std::array<std::array<std::array<std::vector<Pair>, kMaxDim + 1>, kMaxDim + 1>, kMaxDim + 1> pairs;

    Tables() {
        for (int n = 0; n <= kMaxDim; ++n) {
            for (int p = 0; p <= n; ++p) subsets[n][p].resize(binomial(n, p));
            for (Mask m = 0; m <= full(n); ++m) {
                subsets[n][popcount(m)][rank(m)] = m;
            }
        }
        for (int n = 0; n <= kMaxDim; ++n) {
            for (int p = 0; p <= n; ++p) {
                for (int q = 0; p + q <= n; ++q) {
                    auto& out = pairs[n][p][q];
                    const auto& left = subsets[n][p];
                    const auto& right = subsets[n][q];
                    for (std::size_t i = 0; i < left.size(); ++i) {
                        for (std::size_t j = 0; j < right.size(); ++j) {
                            const int s = merge_sign(left[i], right[j]);
                            if (s == 0) continue;
                            out.push_back(Pair{static_cast<std::uint16_t>(i), static_cast<std::uint16_t>(j),
                                               static_cast<std::uint16_t>(rank(left[i] | right[j])),
                                               static_cast<std::int8_t>(s)});
                        }
                    }
                }
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

const std::vector<Mask>& subsets(int n, int p) {
    if (n < 0 || n > kMaxDim || p < 0 || p > n) throw ShapeError("subsets: invalid (n, p)");
    return tables().subsets[n][p];
}

const std::vector<Pair>& disjoint_pairs(int n, int p, int q) {
    if (n < 0 || n > kMaxDim || p < 0 || q < 0 || p + q > n) throw ShapeError("disjoint_pairs: invalid (n, p, q)");
    return tables().pairs[n][p][q];
}

}  // namespace gblab::mi
