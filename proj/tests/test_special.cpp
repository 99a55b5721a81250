#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hk/errors.hpp"
#include "hk/special.hpp"

using namespace hk::special;

TEST_CASE("log_gamma agrees with boost on both sides of zero") {
  for (double x : {0.1, 0.5, 1.0, 1.5, 2.5, 7.25, 40.5, 170.5, -0.5, -1.5, -2.25, -7.75}) {
    const SignedLog g = log_gamma(x);
    int sign = 0;
    const double ref = boost::math::lgamma(x, &sign);
    CHECK(g.log_abs == doctest::Approx(ref).epsilon(1e-14));
    CHECK(g.sign == sign);
  }
  CHECK(log_gamma(4.0).value() == doctest::Approx(6.0).epsilon(1e-15));
}

TEST_CASE("log_gamma rejects poles and non-finite input") {
  CHECK_THROWS_AS(log_gamma(0.0), hk::InputError);
  CHECK_THROWS_AS(log_gamma(-3.0), hk::InputError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), hk::InputError);
}

TEST_CASE("real binomial matches exact rationals") {
  for (int i = 0; i <= 30; ++i) {
    for (const Rational& x : {Rational(1, 2), Rational(-1, 2), Rational(7, 3), Rational(-5, 4)}) {
      const double ref = static_cast<double>(binomial_exact(x, i));
      const double xd = static_cast<double>(x);
      CHECK(binomial(xd, i).value() == doctest::Approx(ref).epsilon(1e-13));
      CHECK(binomial_product(xd, i) == doctest::Approx(ref).epsilon(1e-13));
    }
  }
}

TEST_CASE("integer binomials and exact zeros") {
  for (int nn = 0; nn <= 20; ++nn) {
    for (int i = 0; i <= 25; ++i) {
      const SignedLog b = binomial(nn, i);
      if (i > nn) {
        CHECK(b.sign == 0);
        CHECK(b.value() == 0.0);
      } else {
        CHECK(b.value() == doctest::Approx(boost::math::binomial_coefficient<double>(nn, i)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("binomial reflection C(-1/2, i) = (-1)^i C(2i, i) / 4^i holds exactly") {
  for (int i = 0; i <= 20; ++i) {
    Rational central = binomial_exact(Rational(2 * i), i);
    Rational rhs = central;
    for (int j = 0; j < i; ++j) rhs /= 4;
    if (i % 2) rhs = -rhs;
    CHECK(binomial_exact(Rational(-1, 2), i) == rhs);
  }
}

TEST_CASE("alternating partial sums of C(-1/2, i) follow the hockey-stick identity") {
  // sum_{i<=k} C(-1/2, i) (-1)^i = C(k + 1/2, k), the hockey-stick identity.
  for (int k = 0; k <= 20; ++k) {
    Rational s = 0;
    for (int i = 0; i <= k; ++i) s += (i % 2 ? -1 : 1) * binomial_exact(Rational(-1, 2), i);
    CHECK(s == binomial_exact(Rational(2 * k + 1, 2), k));
  }
  CHECK(partial_binomial_sum_exact(Rational(1, 2), 2) == Rational(1) + Rational(1, 2) - Rational(1, 8));
}

TEST_CASE("gamma duplication residual is at rounding level") {
  for (double z = 0.25; z < 60.0; z *= 1.7) CHECK(gamma_duplication_residual(z) < 1e-12);
}
