#include <doctest.h>

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hk/antideriv.hpp"
#include "hk/errors.hpp"
#include "hk/hermite.hpp"

using namespace hk;
using namespace hk::antideriv;
using special::Rational;

namespace {

double gk(const auto& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

TEST_CASE("odd antiderivative against adaptive quadrature") {
  const HermiteBasis& b = HermiteBasis::shared();
  for (int k : {0, 1, 4, 11}) {
    const double L = truncation(k) + 4;
    for (double x : {-3.0, -0.5, 0.0, 1.2, 4.0}) {
      const double ref = gk([&](double t) { return eval_h(b, 2 * k + 1, t); }, -L, x);
      CHECK(x_odd(k, x) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("odd expansion follows the ladder coefficients") {
  for (int k = 0; k <= 12; ++k) {
    const AntiderivativeSeries s = series_odd(k);
    CHECK(s.parity == Parity::odd);
    REQUIRE(s.expansion.size() == static_cast<std::size_t>(k + 1));
    for (const auto& [degree, bj] : s.expansion) {
      REQUIRE(degree % 2 == 0);
      const int j = degree / 2;
      double prod = 1.0;
      for (int i = j + 1; i <= k; ++i) prod *= std::sqrt(2.0 * i / (2.0 * i + 1));
      CHECK(bj == doctest::Approx(-std::sqrt(2.0 / (2 * j + 1)) * prod).epsilon(1e-14));
    }
    CHECK(s(0.7) == doctest::Approx(x_odd(k, 0.7)).epsilon(1e-14));
  }
}

TEST_CASE("even antiderivative against adaptive quadrature") {
  const HermiteBasis& b = HermiteBasis::shared();
  for (int k : {0, 1, 3, 9}) {
    const double L = truncation(k) + 4;
    for (double x : {-2.5, -0.4, 0.6, 3.5}) {
      const double ref = gk([&](double t) { return (t < 0 ? -1.0 : 1.0) * eval_h(b, 2 * k, t); }, -L, std::min(x, 0.0)) +
                         (x > 0 ? gk([&](double t) { return eval_h(b, 2 * k, t); }, 0.0, x) : 0.0);
      CHECK(x_even(k, x) == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
    }
  }
}

TEST_CASE("odd norm is 2 by closed form, recursion and direct quadrature") {
  for (int k = 0; k <= 40; ++k) {
    CHECK(norm_sq_odd_closed(k) == 2.0);
    CHECK(norm_sq_odd_recursive(k) == doctest::Approx(2.0).epsilon(1e-13));
  }
  for (int k : {0, 2, 7}) {
    const double L = truncation(k);
    const double q = gk([&](double x) { return x_odd(k, x) * x_odd(k, x); }, -L, L);
    CHECK(q == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("even norm closed form against an exact rational sum") {
  for (int k = 0; k <= 40; ++k) {
    const double s = static_cast<double>(special::partial_binomial_sum_exact(Rational(1, 2), k));
    CHECK(norm_sq_even_closed(k) == doctest::Approx(2.0 * (-1.0 + std::sqrt(2.0) * s)).epsilon(1e-14));
    CHECK(norm_sq_even_recursive(k) == doctest::Approx(norm_sq_even_closed(k)).epsilon(1e-12));
    CHECK(partial_binomial_sum(k, 0.5) == doctest::Approx(s).epsilon(1e-14));
  }
}

TEST_CASE("even norm by direct quadrature for small k") {
  for (int k : {0, 1, 3}) {
    const double L = truncation(k);
    const double q = gk([&](double x) { return x_even(k, x) * x_even(k, x); }, -L, L);
    CHECK(q == doctest::Approx(norm_sq_even_closed(k)).epsilon(1e-9));
  }
}

TEST_CASE("norm tables agree across sources") {
  const NormTable c = norm_table(40, NormSource::closed_form);
  const NormTable r = norm_table(40, NormSource::recursion);
  const NormTable q = norm_table(40, NormSource::quadrature);
  for (int k = 0; k <= 40; ++k) {
    CHECK(q.I_odd[k] == doctest::Approx(c.I_odd[k]).epsilon(1e-10));
    CHECK(r.I_odd[k] == doctest::Approx(c.I_odd[k]).epsilon(1e-12));
    CHECK(q.V_even[k] == doctest::Approx(c.V_even[k]).epsilon(1e-10));
    CHECK(2.0 * c.V_even[k] <= 3.0);
  }
  CHECK(std::abs(2.0 * c.V_even[40] - 2.0) < 0.05);
}

TEST_CASE("X_2k at the origin") {
  for (int k = 0; k <= 15; ++k) {
    const double half = half_line_integral_even(k);
    CHECK(x_even_at_zero_sq(k) == doctest::Approx(half * half).epsilon(1e-13));
    CHECK(x_even(k, 0.0) == doctest::Approx(-half).epsilon(1e-11).scale(1.0));
  }
  double lo = 1e9, hi = 0;
  for (int k = 1; k <= 200; ++k) {
    lo = std::min(lo, x_even_at_zero_normalized(k));
    hi = std::max(hi, x_even_at_zero_normalized(k));
  }
  CHECK(lo > 0.1);
  CHECK(hi < 1.0);
}

TEST_CASE("merge identity is exact") {
  for (int k = 0; k <= 20; ++k) {
    CHECK(merge_identity_exact(k) == 0);
    CHECK(merge_identity_check(k) < 1e-14);
  }
}

TEST_CASE("h_2k is orthogonal to X_{2k-1}") {
  for (int k = 1; k <= 20; ++k) CHECK(std::abs(junk_orthogonality(k)) < 1e-10);
}

TEST_CASE("even seed quadrature agrees with the closed form") {
  CHECK(even_seed_by_quadrature() == doctest::Approx(norm_sq_even_closed(0) / 2).epsilon(1e-12));
}
