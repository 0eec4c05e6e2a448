#include "gblab/doubleform/double_form.hpp"

#include "gblab/kernels/kernels.hpp"

namespace gblab {

DoubleForm linear_combine(const DoubleForm& a, const DoubleForm& b, double s, double t) {
    a.require_same(b, "linear_combine");
    DoubleForm out(a.dim(), a.p(), a.q());
    kernels::axpby(s, a.coeffs(), t, b.coeffs(), out.coeffs());
    return out;
}

}  // namespace gblab
