#include "hk/hermite.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hk/errors.hpp"
#include "hk/special.hpp"
#include "simd/kernels_impl.hpp"

namespace hk {
namespace {

constexpr double kLogPi = 1.1447298858494001741434273513530587;

void require_finite(double t, const char* what) {
  if (!std::isfinite(t)) throw InputError(std::string(what) + ": non-finite argument");
}

void require_degree(const HermiteBasis& basis, int k) {
  if (k < 0) throw InputError("Hermite degree must be nonnegative");
  if (k > basis.max_degree()) {
    throw CapabilityError("Hermite degree " + std::to_string(k) + " exceeds basis capacity " +
                          std::to_string(basis.max_degree()));
  }
}

}  // namespace

HermiteBasis::HermiteBasis(int max_degree) : max_degree_(max_degree) {
  if (max_degree < 0) throw InputError("HermiteBasis: negative max_degree");
  if (max_degree > kDegreeCap) {
    throw CapabilityError("HermiteBasis: max_degree above cap " + std::to_string(kDegreeCap));
  }
  log_c_.resize(static_cast<std::size_t>(max_degree) + 1);
  for (int k = 0; k <= max_degree; ++k) {
    log_c_[k] = -0.5 * (k * std::numbers::ln2 + std::lgamma(k + 1.0) + 0.5 * kLogPi);
  }
}

const HermiteBasis& HermiteBasis::shared() {
  static const HermiteBasis basis(kDegreeCap);
  return basis;
}

double HermiteBasis::log_norm(int k) const {
  require_degree(*this, k);
  return log_c_[k];
}

double HermiteBasis::norm(int k) const { return std::exp(log_norm(k)); }

double eval_h(const HermiteBasis& basis, int k, double t) {
  require_degree(basis, k);
  require_finite(t, "eval_h");
  using namespace simd::detail;
  double hprev = seed0(t);
  if (k == 0) return hprev;
  double h = seed1(t, hprev);
  for (int j = 1; j < k; ++j) {
    const double next = step(t, up_coef(j), down_coef(j), h, hprev);
    hprev = h;
    h = next;
  }
  return h;
}

std::vector<double> eval_h_all(const HermiteBasis& basis, int kmax, double t) {
  require_degree(basis, kmax);
  require_finite(t, "eval_h_all");
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1);
  simd::active().hermite_table(&t, 1, kmax, out.data(), 1);
  return out;
}

double eval_hermite_poly(int k, double t) {
  if (k < 0) throw InputError("eval_hermite_poly: negative degree");
  if (k > 170) throw CapabilityError("eval_hermite_poly: degree above 170");
  require_finite(t, "eval_hermite_poly");
  double prev = 1.0;
  if (k == 0) return prev;
  double cur = 2.0 * t;
  for (int j = 1; j < k; ++j) {
    const double next = 2.0 * t * cur - 2.0 * j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

LaguerreParams::LaguerreParams(int k, double alpha, double beta)
    : degree(k), type_exponent(alpha), decay_rate(beta) {
  if (k < 0) throw InputError("LaguerreParams: negative degree");
  if (!(alpha > -1.0) || !std::isfinite(alpha)) throw InputError("LaguerreParams: need alpha > -1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InputError("LaguerreParams: need beta > 0");
}

double eval_laguerre(const LaguerreParams& p, double u) {
  require_finite(u, "eval_laguerre");
  if (u < 0.0) throw InputError("eval_laguerre: u must be nonnegative");
  const double a = p.type_exponent;
  double prev = 1.0;
  if (p.degree == 0) return prev;
  double cur = 1.0 + a - u;
  for (int j = 1; j < p.degree; ++j) {
    const double next = ((2.0 * j + 1.0 + a - u) * cur - (j + a) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_exp_integral(const LaguerreParams& p) {
  const int k = p.degree;
  const double a = p.type_exponent;
  const double b = p.decay_rate;
  if (b == 1.0) {
    // Only the i = k term survives.
    return special::binomial(a + k - 1.0, k).value();
  }
  const double log_b = std::log(b);
  const double log_bm1 = std::log(std::abs(b - 1.0));
  const int sign_bm1 = b > 1.0 ? 1 : -1;
  double sum = 0.0;
  for (int i = 0; i <= k; ++i) {
    const special::SignedLog c = special::binomial(a + i - 1.0, i);
    if (c.sign == 0) continue;
    const int e = k - i;
    const int sign = c.sign * ((e % 2 == 1) ? sign_bm1 : 1);
    sum += sign * std::exp(c.log_abs + e * log_bm1 - (e + 1) * log_b);
  }
  return sum;
}

double half_line_integral_even(int k) {
  if (k < 0) throw InputError("half_line_integral_even: negative k");
  const double quarter_log_pi = 0.25 * kLogPi;
  if (k == 0) {
    // Gamma(2k)/Gamma(k) -> 1/2, i.e. the Gaussian value pi^{1/4}/sqrt(2).
    return std::exp(quarter_log_pi - 0.5 * std::numbers::ln2);
  }
  const double log_val = (0.5 - k) * std::numbers::ln2 + quarter_log_pi + std::lgamma(2.0 * k) -
                         std::lgamma(static_cast<double>(k)) - 0.5 * std::lgamma(2.0 * k + 1.0);
  return std::exp(log_val);
}

double half_line_integral_odd(int k) {
  if (k < 0) throw InputError("half_line_integral_odd: negative k");
  const double log_prefactor = (k + 1.0) * std::numbers::ln2 + std::lgamma(k + 1.0) -
                               0.5 * (std::numbers::ln2 + std::lgamma(2.0 * k + 2.0) + 0.5 * kLogPi);
  double sum = 0.0;
  for (int i = 0; i <= k; ++i) {
    const special::SignedLog c = special::binomial(i - 0.5, i);
    sum += ((i % 2 == 0) ? 1.0 : -1.0) * c.value();
  }
  return std::exp(log_prefactor) * sum;
}

double laguerre_hermite_residual(int k, std::span<const double> t_samples, bool drop_factor_two) {
  if (k < 0) throw InputError("laguerre_hermite_residual: negative k");
  const double log_scale = (2.0 * k + (drop_factor_two ? 0.0 : 1.0)) * std::numbers::ln2 +
                           std::lgamma(k + 1.0);
  const double scale = ((k % 2 == 0) ? 1.0 : -1.0) * std::exp(log_scale);
  const LaguerreParams lp(k, 0.5);
  double worst = 0.0;
  for (double t : t_samples) {
    require_finite(t, "laguerre_hermite_residual");
    const double lhs = eval_hermite_poly(2 * k + 1, t);
    const double rhs = scale * eval_laguerre(lp, t * t) * t;
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return worst;
}

}  // namespace hk
