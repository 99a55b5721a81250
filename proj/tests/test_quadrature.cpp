#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hk/errors.hpp"
#include "hk/quadrature.hpp"

using namespace hk::quad;
constexpr double kPi = std::numbers::pi;

namespace {

double sum_moment(const Rule1D& r, int j, bool scaled = false) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += (scaled ? r.scaled_weights[i] : r.weights[i]) * std::pow(r.nodes[i], j);
  return s;
}

template <int N>
void compare_with_boost_gauss() {
  const Rule1D r = gauss_legendre(N);
  std::vector<double> ref;
  for (double a : boost::math::quadrature::gauss<double, N>::abscissa()) {
    ref.push_back(a);
    if (a != 0.0) ref.push_back(-a);
  }
  std::sort(ref.begin(), ref.end());
  std::vector<double> got = r.nodes;
  std::sort(got.begin(), got.end());
  REQUIRE(got.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(got[i] == doctest::Approx(ref[i]).epsilon(1e-14).scale(1.0));
}

}  // namespace

TEST_CASE("Gauss-Legendre nodes match boost tables") {
  compare_with_boost_gauss<7>();
  compare_with_boost_gauss<20>();
  compare_with_boost_gauss<30>();
}

TEST_CASE("Gauss-Legendre is exact to degree 2m - 1 and symmetric") {
  for (int m : {1, 2, 5, 16, 64, 400}) {
    const Rule1D r = gauss_legendre(m);
    for (int j = 0; j <= std::min(2 * m - 1, 40); ++j) {
      const double exact = j % 2 ? 0.0 : 2.0 / (j + 1);
      CHECK(sum_moment(r, j) == doctest::Approx(exact).scale(1.0).epsilon(1e-13));
    }
    for (int i = 0; i < m; ++i) CHECK(r.nodes[i] == -r.nodes[m - 1 - i]);
  }
}

TEST_CASE("Gauss-Hermite moments are Gamma(j + 1/2)") {
  for (int m : {4, 20, 100, 300}) {
    const Rule1D r = gauss_hermite(m);
    for (int j = 0; j <= std::min(2 * m - 1, 30); j += 2) {
      CHECK(sum_moment(r, j) == doctest::Approx(std::tgamma(j / 2.0 + 0.5)).epsilon(1e-12));
    }
    CHECK(std::abs(sum_moment(r, 3)) < 1e-13);
    // scaled weights integrate the bare function
    const double g = [&] {
      double s = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) s += r.scaled_weights[i] * std::exp(-r.nodes[i] * r.nodes[i]);
      return s;
    }();
    CHECK(g == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  }
}

TEST_CASE("generalized Gauss-Laguerre moments are Gamma(alpha + j + 1)") {
  for (double alpha : {-0.5, 0.0, 0.5, 1.5, 3.0}) {
    const Rule1D r = gauss_laguerre(30, alpha);
    for (int j = 0; j <= 12; ++j) {
      CHECK(sum_moment(r, j) == doctest::Approx(std::tgamma(alpha + j + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Gauss-Jacobi moments against the beta function") {
  for (double a : {-0.5, 0.0, 1.0}) {
    for (double b : {-0.5, 0.0, 0.3, 2.0}) {
      const Rule1D r = gauss_jacobi(12, a, b);
      CHECK(sum_moment(r, 0) == doctest::Approx(std::pow(2.0, a + b + 1) * boost::math::beta(a + 1, b + 1)).epsilon(1e-13));
      // int (1-x)^a (1+x)^{b+1} = int (1-x)^a (1+x)^b (1 + x)
      const double m1 = sum_moment(r, 0) + sum_moment(r, 1);
      CHECK(m1 == doctest::Approx(std::pow(2.0, a + b + 2) * boost::math::beta(a + 1, b + 2)).epsilon(1e-13));
    }
  }
}

TEST_CASE("invalid rule parameters") {
  CHECK_THROWS_AS(gauss_legendre(0), hk::InputError);
  CHECK_THROWS_AS(gauss_laguerre(10, -1.0), hk::InputError);
  CHECK_THROWS_AS(gauss_jacobi(10, -1.5, 0.0), hk::InputError);
  CHECK_THROWS_AS(panel_rule(1.0, 0.0, 4, 4), hk::InputError);
}

TEST_CASE("panel rule partition invariance") {
  auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
  const double exact = std::sqrt(kPi) * std::exp(-9.0 / 4.0);
  double prev = 0.0;
  for (int panels : {40, 80, 160}) {
    const double v = panel_rule(-12.0, 12.0, panels, 16).integrate(f);
    CHECK(v == doctest::Approx(exact).epsilon(1e-13));
    if (prev != 0.0) CHECK(v == doctest::Approx(prev).epsilon(1e-14));
    prev = v;
  }
}

TEST_CASE("radial rule with power weight against the incomplete gamma function") {
  for (double gamma : {-0.5, 0.0, 1.0, 2.0, 0.3}) {
    const double R = 30.0;
    const Rule1D r = radial_rule(gamma, R, {60, 16, 24, 4, 4});
    const double v = r.integrate([](double x) { return std::exp(-x); });
    CHECK(v == doctest::Approx(boost::math::tgamma_lower(gamma + 1, R)).epsilon(1e-12));
  }
}

TEST_CASE("radial 3D and polar 2D singular integrals of a Gaussian") {
  auto g3 = [](double x, double y, double z) { return std::exp(-(x * x + y * y + z * z)); };
  auto g2 = [](double x, double y) { return std::exp(-(x * x + y * y)); };
  const RadialSizes small{100, 16, 24, 16, 16};
  for (double delta : {0.0, 0.25, 0.5, 1.0}) {
    CHECK(integrate_radial_3d(g3, delta, 10.0, small) == doctest::Approx(2 * kPi * std::tgamma(1.5 - delta)).epsilon(1e-12));
  }
  for (double delta : {0.0, 0.5, 0.9}) {
    CHECK(integrate_cyl_2d(g2, delta, 10.0, small) == doctest::Approx(kPi * std::tgamma(1 - delta)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(integrate_cyl_2d(g2, 1.0, 10.0, small), hk::InputError);
  CHECK_THROWS_AS(integrate_radial_3d(g3, 1.2, 10.0, small), hk::InputError);
}

TEST_CASE("scaling covariance of the weighted radial integral") {
  // int f(lambda x) |x|^{-2 delta} dx = lambda^{2 delta - 3} int f(x) |x|^{-2 delta} dx
  auto f = [](double x, double y, double z) { return (1 + x * x + y * z) * std::exp(-(x * x + 2 * y * y + z * z)); };
  const RadialSizes s{100, 16, 24, 32, 32};
  for (double delta : {0.3, 1.0}) {
    const double base = integrate_radial_3d(f, delta, 12.0, s);
    for (double lambda : {0.5, 2.0}) {
      const double scaled = integrate_radial_3d(
          [&](double x, double y, double z) { return f(lambda * x, lambda * y, lambda * z); }, delta, 12.0, s);
      CHECK(scaled == doctest::Approx(std::pow(lambda, 2 * delta - 3) * base).epsilon(1e-10));
    }
  }
}

TEST_CASE("radial sizes doubling") {
  const RadialSizes s{};
  const RadialSizes d = s.doubled();
  CHECK(d.panels == 800);
  CHECK(d.nodes == 32);
  CHECK(d.theta == 128);
  CHECK(s.scaled(1).panels == s.panels);
  CHECK(default_radius(20, 3) == doctest::Approx(std::sqrt(43.0) + 10.0));
}

TEST_CASE("tensor Gauss-Hermite rule") {
  const PointRule r = gauss_hermite_tensor(3, 8);
  CHECK(r.dim == 3);
  CHECK(r.size() == 512);
  double s = 0.0;
  for (std::size_t q = 0; q < r.size(); ++q) {
    const double x = r.axis(0)[q], y = r.axis(1)[q], z = r.axis(2)[q];
    s += r.weights[q] * x * x * y * y * z * z * z * z * std::exp(-(x * x + y * y + z * z));
  }
  CHECK(s == doctest::Approx(std::tgamma(1.5) * std::tgamma(1.5) * std::tgamma(2.5)).epsilon(1e-13));
  const PointRule ab = tensor(gauss_hermite_tensor(1, 3), gauss_hermite_tensor(2, 4));
  CHECK(ab.dim == 3);
  CHECK(ab.size() == 48);
}

TEST_CASE("singular Gaussian rule is exact on polynomial times Gaussian") {
  auto integrate = [](const PointRule& r, auto f) {
    double s = 0.0;
    for (std::size_t q = 0; q < r.size(); ++q) {
      std::vector<double> x(r.dim);
      for (int d = 0; d < r.dim; ++d) x[d] = r.axis(d)[q];
      s += r.weights[q] * f(x);
    }
    return s;
  };
  // 3D, delta = 1: int x^2 e^{-|x|^2} / |x|^2 = (1/3) pi^{3/2}
  const PointRule r3 = gaussian_singular_rule(3, 1.0, 2, 1);
  CHECK(integrate(r3, [](const std::vector<double>& x) { return x[0] * x[0] * std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])); }) ==
        doctest::Approx(std::pow(kPi, 1.5) / 3.0).epsilon(1e-13));
  // 3D, delta = 0: x^4 y^2 against Gamma products
  const PointRule r30 = gaussian_singular_rule(3, 0.0, 3, 1);
  CHECK(integrate(r30, [](const std::vector<double>& x) {
          return std::pow(x[0], 4) * x[1] * x[1] * std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
        }) == doctest::Approx(std::tgamma(2.5) * std::tgamma(1.5) * std::tgamma(0.5)).epsilon(1e-13));
  // 2D, delta = 1/2: int y^2 e^{-r^2} / r = (1/2) int r^2 e^{-r^2} r^{-1} r dr dphi = pi/2 Gamma(3/2)
  const PointRule r2 = gaussian_singular_rule(2, 0.5, 1, 1);
  CHECK(integrate(r2, [](const std::vector<double>& x) { return x[1] * x[1] * std::exp(-(x[0] * x[0] + x[1] * x[1])); }) ==
        doctest::Approx(0.5 * kPi * std::tgamma(1.5)).epsilon(1e-13));
  // 1D vanishing: int x^2 e^{-x^2} / x^2 = sqrt(pi)
  const PointRule r1 = gaussian_singular_rule(1, 1.0, 1, 1, true);
  CHECK(integrate(r1, [](const std::vector<double>& x) { return x[0] * x[0] * std::exp(-x[0] * x[0]); }) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK_THROWS_AS(gaussian_singular_rule(2, 1.0, 2, 1), hk::InputError);
}

TEST_CASE("spherical product integrates spherical harmonics exactly") {
  const std::vector<double> rn = {1.0};
  const std::vector<double> rw = {1.0};
  const PointRule s = spherical_product(3, rn, rw, 4, 1);
  double area = 0.0, z4 = 0.0, xy = 0.0;
  for (std::size_t q = 0; q < s.size(); ++q) {
    area += s.weights[q];
    z4 += s.weights[q] * std::pow(s.axis(2)[q], 4);
    xy += s.weights[q] * s.axis(0)[q] * s.axis(1)[q];
  }
  CHECK(area == doctest::Approx(4 * kPi).epsilon(1e-14));
  CHECK(z4 == doctest::Approx(4 * kPi / 5).epsilon(1e-14));
  CHECK(std::abs(xy) < 1e-14);
}
