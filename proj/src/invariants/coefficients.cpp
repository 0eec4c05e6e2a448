#include "gblab/invariants/coefficients.hpp"

#include "gblab/errors.hpp"

namespace gblab::coeff {

namespace {

void require_nonnegative(int v, const char* what) {
    if (v < 0) throw DomainError(std::string(what) + ": negative argument");
}

Integer sign(int e) { return (e % 2 == 0) ? Integer(1) : Integer(-1); }

}  // namespace

Integer double_factorial(int m) {
    if (m < -1) throw DomainError("double_factorial: argument below -1");
    Integer r = 1;
    for (int i = m; i > 1; i -= 2) r *= i;
    return r;
}

Integer factorial(int m) {
    require_nonnegative(m, "factorial");
    Integer r = 1;
    for (int i = 2; i <= m; ++i) r *= i;
    return r;
}

Integer binomial(int n, int k) {
    require_nonnegative(n, "binomial");
    if (k < 0 || k > n) return 0;
    return factorial(n) / (factorial(k) * factorial(n - k));
}

Integer c_tilde(int l) {
    require_nonnegative(l, "c_tilde");
    return sign(l) * double_factorial(2 * l - 1);
}

Rational chern_a(int j, int k) {
    require_nonnegative(j, "chern_a");
    if (k < 1 || j > k - 1) throw DomainError("chern_a: need 0 <= j <= k - 1");
    const Integer den = (Integer(1) << j) * (2 * j + 1) * factorial(j) * factorial(k - 1 - j);
    return Rational(sign(j), den);
}

Rational odd_pfaffian_coefficient(int j, int k) {
    require_nonnegative(j, "odd_pfaffian_coefficient");
    if (k < 1 || j > k - 1) throw DomainError("odd_pfaffian_coefficient: need 0 <= j <= k - 1");
    return Rational(sign(k + j) * double_factorial(2 * k - 2 * j - 3), factorial(j) * factorial(2 * k - 2 * j - 1));
}

Rational double_factorial_sum(int p) {
    require_nonnegative(p, "double_factorial_sum");
    Rational s = 0;
    for (int j = 0; j <= p; ++j)
        s += Rational(sign(j) * double_factorial(2 * p), double_factorial(2 * j) * double_factorial(2 * p - 2 * j + 1));
    return s;
}

Rational double_factorial_sum_closed(int p) {
    require_nonnegative(p, "double_factorial_sum_closed");
    return Rational(sign(p), 2 * p + 1);
}

Rational beta_integral(int k) {
    if (k < 1) throw DomainError("beta_integral: k must be positive");
    Rational s = 0;
    for (int i = 0; i <= k - 1; ++i) s += Rational(sign(i) * binomial(k - 1, i), 2 * i + 1);
    return s;
}

Rational beta_integral_closed(int k) {
    if (k < 1) throw DomainError("beta_integral_closed: k must be positive");
    const Integer f = factorial(k - 1);
    return Rational((Integer(1) << (2 * k - 2)) * f * f, factorial(2 * k - 1));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }
double to_double(const Integer& z) { return z.convert_to<double>(); }

}  // namespace gblab::coeff
