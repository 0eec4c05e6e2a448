#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "gblab/doubleform/double_form.hpp"
#include "gblab/doubleform/pfaffian.hpp"

using namespace gblab;

namespace {

// Independent model: a double form as a sum of (ordered index tuple, ordered index tuple) terms,
// canonicalized by bubble-sorting each tuple and tracking transpositions.
using Tuple = std::vector<int>;
using Expanded = std::map<std::pair<Tuple, Tuple>, double>;

int sort_with_sign(Tuple& t) {
    int sign = 1;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j + 1 < t.size() - i; ++j)
            if (t[j] > t[j + 1]) {
                std::swap(t[j], t[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] == t[i + 1]) return 0;
    return sign;
}

Tuple tuple_of(mi::Mask m) {
    Tuple t;
    for (int b = 0; b < 8; ++b)
        if (m & (1u << b)) t.push_back(b);
    return t;
}

Expanded expand(const DoubleForm& f) {
    Expanded e;
    const auto& rows = mi::subsets(f.dim(), f.p());
    const auto& cols = mi::subsets(f.dim(), f.q());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (f.coeff(i, j) != 0.0) e[{tuple_of(rows[i]), tuple_of(cols[j])}] += f.coeff(i, j);
    return e;
}

Expanded brute_wedge(const Expanded& a, const Expanded& b) {
    Expanded out;
    for (const auto& [ka, va] : a)
        for (const auto& [kb, vb] : b) {
            Tuple I = ka.first, J = ka.second;
            I.insert(I.end(), kb.first.begin(), kb.first.end());
            J.insert(J.end(), kb.second.begin(), kb.second.end());
            const int s = sort_with_sign(I) * sort_with_sign(J);
            if (s != 0) out[{I, J}] += s * va * vb;
        }
    return out;
}

DoubleForm random_form(int n, int p, int q, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DoubleForm f(n, p, q);
    for (auto& c : f.coeffs()) c = u(rng);
    return f;
}

double max_diff(const DoubleForm& a, const DoubleForm& b) {
    REQUIRE(a.same_shape(b));
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
    return m;
}

double max_diff(const Expanded& a, const Expanded& b) {
    double m = 0.0;
    for (const auto& [k, v] : a) {
        auto it = b.find(k);
        m = std::max(m, std::abs(v - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto& [k, v] : b)
        if (!a.count(k)) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("colex rank enumerates subsets in order") {
    for (int n = 0; n <= 8; ++n)
        for (int p = 0; p <= n; ++p) {
            const auto& s = mi::subsets(n, p);
            CHECK(s.size() == mi::binomial(n, p));
            for (std::size_t i = 0; i < s.size(); ++i) CHECK(mi::rank(s[i]) == i);
        }
    CHECK(mi::merge_sign(0b10, 0b01) == -1);
    CHECK(mi::merge_sign(0b01, 0b10) == 1);
    CHECK(mi::merge_sign(0b11, 0b01) == 0);
}

TEST_CASE("linear_combine") {
    std::mt19937_64 rng(11);
    const DoubleForm a = random_form(4, 2, 2, rng);
    const DoubleForm b = random_form(4, 2, 2, rng);
    CHECK(max_diff(linear_combine(a, b, 1.0, 0.0), a) == 0.0);
    CHECK(linear_combine(a, a, 1.0, -1.0).is_zero());
    DoubleForm ones(3, 1, 2);
    for (auto& c : ones.coeffs()) c = 1.0;
    const DoubleForm five = linear_combine(ones, ones, 2.0, 3.0);
    for (double c : five.coeffs()) CHECK(c == 5.0);
    CHECK_THROWS_AS(linear_combine(a, DoubleForm(4, 1, 2), 1.0, 1.0), ShapeError);
    CHECK_THROWS_AS(linear_combine(a, DoubleForm(3, 2, 2), 1.0, 1.0), ShapeError);
}

TEST_CASE("wedge of the metric form in dimension 2") {
    const DoubleForm h = DoubleForm::metric(2);
    const DoubleForm hh = wedge(h, h);
    CHECK(hh.p() == 2);
    CHECK(hh.q() == 2);
    CHECK(hh.at(0b11, 0b11) == 2.0);
    CHECK(wedge(h, DoubleForm(2, 1, 1)).is_zero());
    CHECK_THROWS_AS(wedge(h, DoubleForm::metric(3)), ShapeError);
}

TEST_CASE("wedge overflow yields zero of clipped bidegree") {
    const DoubleForm r(3, 2, 2);
    const DoubleForm w = wedge(r, r);
    CHECK(w.is_zero());
    CHECK(w.p() == 3);
    CHECK(power(DoubleForm::metric(2), 3).is_zero());
}

TEST_CASE("wedge matches brute-force expansion") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 4; ++n)
        for (int p = 0; p <= n; ++p)
            for (int q = 0; q <= n; ++q)
                for (int p2 = 0; p + p2 <= n; ++p2)
                    for (int q2 = 0; q + q2 <= n; ++q2) {
                        const DoubleForm a = random_form(n, p, q, rng);
                        const DoubleForm b = random_form(n, p2, q2, rng);
                        CHECK(max_diff(expand(wedge(a, b)), brute_wedge(expand(a), expand(b))) < 1e-12);
                    }
}

TEST_CASE("berezin of wedge matches brute force") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 4; ++n)
        for (int q = 0; q <= n; ++q) {
            const DoubleForm a = random_form(n, 1, q, rng);
            const DoubleForm b = random_form(n, n - 1, n - q, rng);
            const DoubleForm B = berezin(wedge(a, b), OrientedFrameContext(n, 1));
            const Expanded e = brute_wedge(expand(a), expand(b));
            Tuple all;
            for (int i = 0; i < n; ++i) all.push_back(i);
            auto it = e.find({all, all});
            CHECK(std::abs(top_coefficient(B) - (it == e.end() ? 0.0 : it->second)) < 1e-12);
        }
}

TEST_CASE("wedge is bilinear and associative") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const DoubleForm a = random_form(5, 1, 2, rng);
        const DoubleForm b = random_form(5, 2, 1, rng);
        const DoubleForm b2 = random_form(5, 2, 1, rng);
        const DoubleForm c = random_form(5, 1, 1, rng);
        CHECK(max_diff(wedge(wedge(a, b), c), wedge(a, wedge(b, c))) < 1e-12);
        CHECK(max_diff(wedge(a, linear_combine(b, b2, 2.0, -3.0)),
                       linear_combine(wedge(a, b), wedge(a, b2), 2.0, -3.0)) < 1e-12);
    }
}

TEST_CASE("even bidegrees commute") {
    std::mt19937_64 rng(9);
    const DoubleForm a = random_form(6, 2, 2, rng);
    const DoubleForm b = random_form(6, 1, 1, rng);
    CHECK(max_diff(wedge(a, b), wedge(b, a)) < 1e-12);
}

TEST_CASE("power and berezin of the metric form") {
    const DoubleForm h = DoubleForm::metric(3);
    CHECK(max_diff(power(h, 1), h) == 0.0);
    CHECK(power(h, 0).at(0, 0) == 1.0);
    const OrientedFrameContext ctx(3, 1);
    CHECK(top_coefficient(berezin(power(h, 3), ctx)) == doctest::Approx(6.0));
    CHECK(top_coefficient(berezin(power(h, 3), OrientedFrameContext(3, -1))) == doctest::Approx(-6.0));
    CHECK(berezin(power(h, 2), ctx).is_zero());
    CHECK(top_coefficient(berezin(DoubleForm::metric(1), OrientedFrameContext(1, 1))) == 1.0);
    DoubleForm v(2, 2, 2);
    v.at(0b11, 0b11) = 1.0;
    CHECK(top_coefficient(berezin(v, OrientedFrameContext(2, 1))) == 1.0);
}

TEST_CASE("exact integer path: B(h^n) = n!") {
    std::int64_t fact = 1;
    for (int n = 1; n <= 6; ++n) {
        fact *= n;
        const IntDoubleForm h = IntDoubleForm::metric(n);
        const IntDoubleForm hn = power(h, n);
        CHECK(hn.size() == 1);
        CHECK(top_coefficient(berezin(hn, OrientedFrameContext(n, 1))) == fact);
    }
}

TEST_CASE("orientation context validation") {
    CHECK_THROWS_AS(OrientedFrameContext(2, 0), DomainError);
    CHECK_THROWS_AS(DoubleForm(9, 1, 1), ShapeError);
    CHECK_THROWS_AS(DoubleForm(3, 4, 1), ShapeError);
}

TEST_CASE("pfaffian_skew on scalars") {
    Eigen::MatrixXd A(2, 2);
    A << 0, 1, -1, 0;
    CHECK(pfaffian_skew(A) == 1.0);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(4, 4);
    B(0, 1) = 2.5;
    B(1, 0) = -2.5;
    B(2, 3) = -1.5;
    B(3, 2) = 1.5;
    CHECK(pfaffian_skew(B) == doctest::Approx(-3.75));
    CHECK_THROWS_AS(pfaffian_skew(Eigen::MatrixXd::Zero(3, 3)), ShapeError);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 2; n <= 8; n += 2)
        for (int trial = 0; trial < 10; ++trial) {
            Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    M(i, j) = u(rng);
                    M(j, i) = -M(i, j);
                }
            const double pf = pfaffian_skew(M);
            CHECK(std::abs(pf * pf - M.determinant()) < 1e-9);
        }
}
