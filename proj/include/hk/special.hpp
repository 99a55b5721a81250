#pragma once
// Log-space gamma/binomial helpers and exact rational binomials.

#include <boost/multiprecision/cpp_int.hpp>

namespace hk::special {

using Rational = boost::multiprecision::cpp_rational;

/// A real number stored as sign * exp(log_abs); sign is -1, 0 or +1.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;

  double value() const;
};

/// log|Gamma(x)| with the sign of Gamma(x).  Throws InputError at poles.
SignedLog log_gamma(double x);

/// Generalized binomial C(x, i) = x (x-1) ... (x-i+1) / i! for real x,
/// integer i >= 0, evaluated through log-gamma with sign tracking.  Exact
/// zeros (x a nonnegative integer below i) are reported with sign 0.
SignedLog binomial(double x, int i);

/// Same coefficient evaluated multiplicatively; used for partial sums.
double binomial_product(double x, int i);

/// Residual |log Gamma(z+1/2) - log(2^{1-2z} sqrt(pi) Gamma(2z)/Gamma(z))|.
double gamma_duplication_residual(double z);

/// Exact C(p/q, i) for rational upper argument.
Rational binomial_exact(const Rational& x, int i);

/// Sum_{i=0}^{k} C(x, i) exactly.
Rational partial_binomial_sum_exact(const Rational& x, int k);

}  // namespace hk::special
