#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/SVD>

#include "hk/errors.hpp"
#include "hk/verify.hpp"

using namespace hk;
using namespace hk::verify;
using spectral::MultiIndex;

TEST_CASE("id and status names round-trip") {
  for (int i = 0; i <= static_cast<int>(EstimateId::appendix_identities); ++i) {
    const auto id = static_cast<EstimateId>(i);
    CHECK(estimate_id_from_string(to_string(id)) == id);
  }
  for (auto s : {Status::passed, Status::failed, Status::inconclusive}) CHECK(status_from_string(to_string(s)) == s);
  CHECK_FALSE(estimate_id_from_string("nope").has_value());
}

TEST_CASE("log-log slope recovers a power law") {
  std::vector<std::pair<int, double>> pts;
  for (int k = 0; k <= 20; ++k) pts.emplace_back(k, 3.0 * std::pow(std::max(k, 1), 0.75));
  CHECK(log_log_slope(pts) == doctest::Approx(0.75).epsilon(1e-12));
  std::vector<std::pair<int, double>> flat;
  for (int k = 1; k <= 10; ++k) flat.emplace_back(k, 2.0);
  CHECK(std::abs(log_log_slope(flat)) < 1e-14);
}

TEST_CASE("random states are unit, deterministic and stream-separated") {
  const auto support = spectral::enumerate_multiindices(2, 5);
  const auto a = random_state(2, 5, support, 42, "tag", 0);
  const auto b = random_state(2, 5, support, 42, "tag", 0);
  const auto c = random_state(2, 5, support, 42, "tag", 1);
  const auto d = random_state(2, 5, support, 42, "other", 0);
  const auto e = random_state(2, 5, support, 43, "tag", 0);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.coefficients() == b.coefficients());
  CHECK(a.coefficients() != c.coefficients());
  CHECK(a.coefficients() != d.coefficients());
  CHECK(a.coefficients() != e.coefficients());
}

TEST_CASE("power iteration agrees with an SVD") {
  std::mt19937_64 g(5);
  std::normal_distribution<double> nd;
  for (int size : {1, 4, 17}) {
    Eigen::MatrixXd B(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) B(i, j) = nd(g);
    const Eigen::MatrixXd A = B * B.transpose();
    const PowerResult p = top_singular_value(A, 9);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    CHECK(p.converged);
    CHECK(p.value == doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
  }
  CHECK(top_singular_value(Eigen::MatrixXd::Zero(3, 3), 1).value == 0.0);
}

TEST_CASE("singularized operator norm at level 0") {
  ScanConfig cfg;
  const OperatorNorm on = operator_norm_singular_kernel(cfg, 3, 1.0, 0);
  CHECK(on.one_sided == doctest::Approx(2.0 / std::sqrt(std::numbers::pi)).epsilon(1e-12));
  CHECK(on.two_sided == doctest::Approx(2.0).epsilon(1e-12));
  const OperatorNorm half = operator_norm_singular_kernel(cfg, 3, 0.5, 0);
  CHECK(half.one_sided == doctest::Approx(std::tgamma(1.25) / std::tgamma(1.5)).epsilon(1e-12));
}

TEST_CASE("even index cover leaves nothing out") {
  for (int k = 0; k <= 40; k += 2) CHECK(uncovered_even_indices(k) == 0);
}

TEST_CASE("even 3D functional guard and ground state") {
  spectral::SpectralState bad(3, 1);
  bad.set(MultiIndex{0, 1, 0}, 1.0);
  CHECK_THROWS_AS(even_3d_functional(bad), InputError);
  spectral::SpectralState g(3, 0);
  g.set(MultiIndex{0, 0, 0}, 1.0);
  CHECK(even_3d_functional(g) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("default Kato bounds") {
  CHECK(default_kato_bound(3, 1.0) == 10.0);
  CHECK(default_kato_bound(2, 0.5) == doctest::Approx(10.0 * std::sqrt(std::numbers::pi)));
}

TEST_CASE("cheap checks pass and carry the seed") {
  ScanConfig cfg;
  cfg.seed = 7;
  for (const EstimateReport& r :
       {check_appendix_identities(cfg), check_odd_identity(cfg), check_morawetz_2d(cfg), check_negative_control(cfg)}) {
    CAPTURE(r.name);
    CHECK(r.status == Status::passed);
    CHECK(!r.samples.empty());
    bool has_seed = false;
    for (const auto& [k, v] : r.parameters) has_seed = has_seed || (k == "seed" && v == "7");
    CHECK(has_seed);
  }
}

TEST_CASE("a tolerance override that is too tight makes an identity fail") {
  ScanConfig cfg;
  cfg.k_max = 10;
  cfg.tolerance = 0.0;
  cfg.trials = 2;
  const EstimateReport r = check_odd_identity(cfg);
  CHECK(r.status == Status::failed);
}

TEST_CASE("inadmissible Kato parameters are refused") {
  ScanConfig cfg;
  CHECK_THROWS_AS(check_kato(cfg, 2, 1.0, {0, 1}), InputError);
  CHECK_THROWS_AS(check_kato(cfg, 1, 0.5, {0}), InputError);
}
