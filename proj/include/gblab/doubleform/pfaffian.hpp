#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "gblab/doubleform/double_form.hpp"
#include "gblab/doubleform/multi_index.hpp"
#include "gblab/errors.hpp"

namespace gblab {

namespace detail {

// Pf over the index set `m` by expansion along its smallest index, memoized per subset.
template <class T, class Ops>
T pfaffian_rec(const std::vector<std::vector<T>>& A, mi::Mask m, const Ops& ops, std::map<mi::Mask, T>& memo) {
    if (m == 0) return ops.one();
    if (auto it = memo.find(m); it != memo.end()) return it->second;
    int first = 0;
    while (!(m & (mi::Mask{1} << first))) ++first;
    const mi::Mask rest = m & ~(mi::Mask{1} << first);
    bool have = false;
    T acc{};
    int sign = 1;
    for (int j = first + 1; rest >> j; ++j) {
        if (!(rest & (mi::Mask{1} << j))) continue;
        T term = ops.mul(A[first][j], pfaffian_rec(A, rest & ~(mi::Mask{1} << j), ops, memo));
        if (sign < 0) term = ops.neg(term);
        if (have) {
            ops.add(acc, term);
        } else {
            acc = term;
            have = true;
        }
        sign = -sign;
    }
    memo.emplace(m, acc);
    return acc;
}

struct ScalarOps {
    double one() const { return 1.0; }
    double mul(double a, double b) const { return a * b; }
    double neg(double a) const { return -a; }
    void add(double& acc, double t) const { acc += t; }
};

struct FormOps {
    int n;
    DoubleForm one() const { return DoubleForm::unit(n); }
    DoubleForm mul(const DoubleForm& a, const DoubleForm& b) const { return wedge(a, b); }
    DoubleForm neg(DoubleForm a) const { return a *= -1.0; }
    void add(DoubleForm& acc, const DoubleForm& t) const { acc += t; }
};

}  // namespace detail

// Combinatorial Pfaffian of a scalar skew matrix.
inline double pfaffian_skew(const Eigen::MatrixXd& A) {
    const auto n = A.rows();
    if (A.cols() != n) throw ShapeError("pfaffian_skew: matrix is not square");
    if (n % 2) throw ShapeError("pfaffian_skew: odd size");
    if (n > mi::kMaxDim) throw ShapeError("pfaffian_skew: size above 8");
    const double scale = A.cwiseAbs().maxCoeff();
    if ((A + A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (scale > 1.0 ? scale : 1.0))
        throw ShapeError("pfaffian_skew: matrix is not skew-symmetric");
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) rows[i][j] = A(i, j);
    std::map<mi::Mask, double> memo;
    return detail::pfaffian_rec(rows, mi::full(static_cast<int>(n)), detail::ScalarOps{}, memo);
}

// Pfaffian of a skew matrix whose entries are even-degree forms (bidegree (2, 0) or similar).
inline DoubleForm pfaffian_skew(const std::vector<std::vector<DoubleForm>>& A) {
    const std::size_t n = A.size();
    if (n % 2) throw ShapeError("pfaffian_skew: odd size");
    if (n > static_cast<std::size_t>(mi::kMaxDim)) throw ShapeError("pfaffian_skew: size above 8");
    if (n == 0) throw ShapeError("pfaffian_skew: empty matrix of forms has no ambient dimension");
    for (const auto& row : A)
        if (row.size() != n) throw ShapeError("pfaffian_skew: matrix is not square");
    const int dim = A[0][0].dim();
    std::map<mi::Mask, DoubleForm> memo;
    return detail::pfaffian_rec(A, mi::full(static_cast<int>(n)), detail::FormOps{dim}, memo);
}

}  // namespace gblab
