#include "hk/special.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "hk/errors.hpp"

namespace hk::special {

double SignedLog::value() const {
  if (sign == 0) return 0.0;
  return sign * std::exp(log_abs);
}

SignedLog log_gamma(double x) {
  if (!std::isfinite(x)) throw InputError("log_gamma: non-finite argument");
  if (x <= 0.0 && x == std::floor(x)) throw InputError("log_gamma: pole at nonpositive integer");
  int sign = 1;
  const double l = boost::math::lgamma(x, &sign);
  return {l, sign};
}

SignedLog binomial(double x, int i) {
  if (i < 0) throw InputError("binomial: negative lower index");
  if (i == 0) return {0.0, 1};
  const bool integral = x == std::floor(x);
  // One of the factors x, x-1, ..., x-i+1 vanishes.
  if (integral && x >= 0.0 && x < i) return {0.0, 0};
  const double log_i_fact = log_gamma(static_cast<double>(i) + 1.0).log_abs;
  if (integral && x < 0.0) {
    // Gamma(x+1) has a pole; reflect: C(x,i) = (-1)^i C(i-x-1, i).
    const double y = i - x - 1.0;
    const SignedLog num = log_gamma(y + 1.0);
    const SignedLog den = log_gamma(y - i + 1.0);
    return {num.log_abs - den.log_abs - log_i_fact, (i % 2 == 0) ? 1 : -1};
  }
  const SignedLog num = log_gamma(x + 1.0);
  const SignedLog den = log_gamma(x - i + 1.0);
  return {num.log_abs - den.log_abs - log_i_fact, num.sign * den.sign};
}

double binomial_product(double x, int i) {
  double term = 1.0;
  for (int j = 0; j < i; ++j) term *= (x - j) / (j + 1);
  return term;
}

double gamma_duplication_residual(double z) {
  const SignedLog lhs = log_gamma(z + 0.5);
  const SignedLog g2z = log_gamma(2.0 * z);
  const SignedLog gz = log_gamma(z);
  const double rhs = (1.0 - 2.0 * z) * std::numbers::ln2 + 0.5 * std::log(std::numbers::pi) +
                     g2z.log_abs - gz.log_abs;
  if (lhs.sign != g2z.sign * gz.sign) return std::abs(lhs.value()) + std::abs(std::exp(rhs));
  return std::abs(lhs.log_abs - rhs);
}

Rational binomial_exact(const Rational& x, int i) {
  Rational term = 1;
  for (int j = 0; j < i; ++j) term = term * (x - j) / (j + 1);
  return term;
}

Rational partial_binomial_sum_exact(const Rational& x, int k) {
  Rational term = 1;
  Rational sum = 1;
  for (int i = 0; i < k; ++i) {
    term = term * (x - i) / (i + 1);
    sum += term;
  }
  return sum;
}

}  // namespace hk::special
