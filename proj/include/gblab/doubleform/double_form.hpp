#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gblab/doubleform/multi_index.hpp"
#include "gblab/errors.hpp"

namespace gblab {

// Fixes the distinguished unit n-covector used by the Berezin integral.
struct OrientedFrameContext {
    int n = 0;
    int orientation = 1;

    OrientedFrameContext() = default;
    OrientedFrameContext(int dim, int orient) : n(dim), orientation(orient) {
        if (orient != 1 && orient != -1) throw DomainError("orientation must be +1 or -1");
        if (dim < 0 || dim > mi::kMaxDim) throw ShapeError("orientation context: dimension out of range");
    }
};

// Element of Lambda^p (x) Lambda^q over an n-dimensional space, stored densely:
// row = colex rank of I (|I| = p), column = colex rank of J (|J| = q).
template <class T>
class BasicDoubleForm {
public:
    BasicDoubleForm() = default;

    BasicDoubleForm(int n, int p, int q) : n_(n), p_(p), q_(q) {
        if (n < 0 || n > mi::kMaxDim) throw ShapeError("double form: dimension must lie in [0, 8]");
        if (p < 0 || q < 0 || p > n || q > n) throw ShapeError("double form: bidegree out of range");
        rows_ = static_cast<std::size_t>(mi::binomial(n, p));
        cols_ = static_cast<std::size_t>(mi::binomial(n, q));
        c_.assign(rows_ * cols_, T(0));
    }

    static BasicDoubleForm unit(int n) {
        BasicDoubleForm u(n, 0, 0);
        u.c_[0] = T(1);
        return u;
    }

    // Sum of e^a (x) e^a, the metric as a (1,1) form in an orthonormal frame.
    static BasicDoubleForm metric(int n) {
        BasicDoubleForm h(n, 1, 1);
        for (int a = 0; a < n; ++a) h.coeff(a, a) = T(1);
        return h;
    }

    int dim() const { return n_; }
    int p() const { return p_; }
    int q() const { return q_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return c_.size(); }

    T& coeff(std::size_t i, std::size_t j) { return c_[i * cols_ + j]; }
    const T& coeff(std::size_t i, std::size_t j) const { return c_[i * cols_ + j]; }

    T& at(mi::Mask I, mi::Mask J) {
        check_masks(I, J);
        return coeff(mi::rank(I), mi::rank(J));
    }
    const T& at(mi::Mask I, mi::Mask J) const {
        check_masks(I, J);
        return coeff(mi::rank(I), mi::rank(J));
    }

    std::span<T> coeffs() { return c_; }
    std::span<const T> coeffs() const { return c_; }

    bool same_shape(const BasicDoubleForm& o) const { return n_ == o.n_ && p_ == o.p_ && q_ == o.q_; }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != T(0)) return false;
        return true;
    }

    BasicDoubleForm& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        return *this;
    }

    BasicDoubleForm& operator+=(const BasicDoubleForm& o) {
        require_same(o, "operator+=");
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }

    void require_same(const BasicDoubleForm& o, const char* where) const {
        if (!same_shape(o)) throw ShapeError(std::string(where) + ": (n, p, q) mismatch");
    }

private:
    void check_masks(mi::Mask I, mi::Mask J) const {
        if ((I & ~mi::full(n_)) || (J & ~mi::full(n_)) || mi::popcount(I) != p_ || mi::popcount(J) != q_)
            throw ShapeError("double form: multi-index does not match bidegree");
    }

    int n_ = 0, p_ = 0, q_ = 0;
    std::size_t rows_ = 1, cols_ = 1;
    std::vector<T> c_ = {T(0)};
};

using DoubleForm = BasicDoubleForm<double>;
using IntDoubleForm = BasicDoubleForm<std::int64_t>;

template <class T>
BasicDoubleForm<T> linear_combine(const BasicDoubleForm<T>& a, const BasicDoubleForm<T>& b, const T& s, const T& t) {
    a.require_same(b, "linear_combine");
    BasicDoubleForm<T> out(a.dim(), a.p(), a.q());
    auto ca = a.coeffs();
    auto cb = b.coeffs();
    auto co = out.coeffs();
    for (std::size_t i = 0; i < co.size(); ++i) co[i] = s * ca[i] + t * cb[i];
    return out;
}

// Dispatches to the vector kernel.
DoubleForm linear_combine(const DoubleForm& a, const DoubleForm& b, double s, double t);

// (alpha (x) beta) ^ (gamma (x) delta) = (alpha ^ gamma) (x) (beta ^ delta), no interchange sign.
template <class T>
BasicDoubleForm<T> wedge(const BasicDoubleForm<T>& a, const BasicDoubleForm<T>& b) {
    const int n = a.dim();
    if (b.dim() != n) throw ShapeError("wedge: dimension mismatch");
    const int p = a.p() + b.p();
    const int q = a.q() + b.q();
    if (p > n || q > n) return BasicDoubleForm<T>(n, p > n ? n : p, q > n ? n : q);
    BasicDoubleForm<T> out(n, p, q);
    const auto& rowp = mi::disjoint_pairs(n, a.p(), b.p());
    const auto& colp = mi::disjoint_pairs(n, a.q(), b.q());
    for (const auto& r : rowp) {
        for (const auto& c : colp) {
            const T& x = a.coeff(r.a, c.a);
            if (x == T(0)) continue;
            const T& y = b.coeff(r.b, c.b);
            if (y == T(0)) continue;
            const T prod = x * y;
            if (r.sign * c.sign > 0)
                out.coeff(r.c, c.c) += prod;
            else
                out.coeff(r.c, c.c) -= prod;
        }
    }
    return out;
}

// Repeated wedge; bidegree overflow yields the zero form of the clipped bidegree.
template <class T>
BasicDoubleForm<T> power(const BasicDoubleForm<T>& a, int m) {
    if (m < 0) throw DomainError("power: negative exponent");
    const int n = a.dim();
    if (m * a.p() > n || m * a.q() > n) {
        const int p = m * a.p() > n ? n : m * a.p();
        const int q = m * a.q() > n ? n : m * a.q();
        return BasicDoubleForm<T>(n, p, q);
    }
    BasicDoubleForm<T> out = BasicDoubleForm<T>::unit(n);
    for (int i = 0; i < m; ++i) out = wedge(out, a);
    return out;
}

// Contraction of the second slot with the oriented volume element.
template <class T>
BasicDoubleForm<T> berezin(const BasicDoubleForm<T>& a, const OrientedFrameContext& ctx) {
    const int n = a.dim();
    if (ctx.n != n) throw ShapeError("berezin: context dimension mismatch");
    BasicDoubleForm<T> out(n, a.p(), 0);
    if (a.q() != n) return out;
    for (std::size_t i = 0; i < a.rows(); ++i) out.coeff(i, 0) = a.coeff(i, 0) * T(ctx.orientation);
    return out;
}

// Coefficient of a top-degree (n, 0) form against e^1 ^ ... ^ e^n.
template <class T>
T top_coefficient(const BasicDoubleForm<T>& a) {
    if (a.p() != a.dim() || a.q() != 0) throw ShapeError("top_coefficient: form is not of bidegree (n, 0)");
    return a.coeff(0, 0);
}

}  // namespace gblab
