#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace gblab::coeff {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// m!! for m >= -1, with (-1)!! = 0!! = 1.
Integer double_factorial(int m);
Integer factorial(int m);
Integer binomial(int n, int k);

// c~(l) = (-1)^l (2l - 1)!!
Integer c_tilde(int l);

// Coefficient of B(II^{2j+1} ^ R^{k-1-j}) in the boundary correction form:
// (-1)^j / (2^j (2j+1) j! (k-1-j)!)
Rational chern_a(int j, int k);

// Coefficient of B(R^j ^ h^{2k-1-2j}) in the odd Pfaffian: (-1)^{k+j} (2k-2j-3)!! / (j! (2k-2j-1)!)
Rational odd_pfaffian_coefficient(int j, int k);

// sum_{j=0}^p (-1)^j (2p)!! / ((2j)!! (2p-2j+1)!!) and its closed form (-1)^p / (2p+1).
Rational double_factorial_sum(int p);
Rational double_factorial_sum_closed(int p);

// int_0^1 (1 - x^2)^{k-1} dx by binomial expansion, and 2^{2k-2} ((k-1)!)^2 / (2k-1)!.
Rational beta_integral(int k);
Rational beta_integral_closed(int k);

double to_double(const Rational& q);
double to_double(const Integer& z);

}  // namespace gblab::coeff
