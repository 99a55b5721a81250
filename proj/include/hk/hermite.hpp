#pragma once
// One-dimensional normalized Hermite functions, Hermite and Laguerre
// polynomials, and closed-form integrals built from them.
//
// h_k(t) = c_k H_k(t) e^{-t^2/2},  c_k = (2^k k! sqrt(pi))^{-1/2}.
//
// Evaluation always goes through the normalized three-term recurrence, which
// stays bounded (|h_k| < 1) and never forms k! or 2^k.  Derivative-form and
// Rodrigues-form identities are checked by the test suite instead.

#include <span>
#include <vector>

namespace hk {

/// Normalization constants and recurrence coefficients up to a maximum degree.
/// Immutable after construction; share freely across threads.
class HermiteBasis {
 public:
  /// Largest supported degree.  Above this the Gaussian seed of the recurrence
  /// underflows inside the oscillatory region.
  static constexpr int kDegreeCap = 600;

  explicit HermiteBasis(int max_degree);

  /// Process-wide basis with max_degree == kDegreeCap.
  static const HermiteBasis& shared();

  int max_degree() const { return max_degree_; }
  /// log c_k
  double log_norm(int k) const;
  double norm(int k) const;

 private:
  int max_degree_;
  std::vector<double> log_c_;
};

/// h_k(t).  Throws CapabilityError if k > basis.max_degree(), InputError if t
/// is not finite.
double eval_h(const HermiteBasis& basis, int k, double t);

/// (h_0(t), ..., h_kmax(t)) from one recurrence pass; entry j is bit-identical
/// to eval_h(basis, j, t).
std::vector<double> eval_h_all(const HermiteBasis& basis, int kmax, double t);

/// Physicists' Hermite polynomial H_k(t), by H_{k+1} = 2t H_k - 2k H_{k-1}.
double eval_hermite_poly(int k, double t);

/// Parameters of L_k^alpha and the exponential rate used by
/// laguerre_exp_integral.  Validated on construction: alpha > -1, beta > 0.
struct LaguerreParams {
  int degree;
  double type_exponent;
  double decay_rate = 1.0;

  LaguerreParams(int k, double alpha, double beta = 1.0);
};

/// Generalized Laguerre polynomial L_k^alpha(u), u >= 0.
double eval_laguerre(const LaguerreParams& p, double u);

/// int_0^inf L_k^alpha(u) e^{-beta u} du in closed form:
/// sum_i C(alpha+i-1, i) (beta-1)^{k-i} / beta^{k-i+1}.
double laguerre_exp_integral(const LaguerreParams& p);

/// int_0^inf h_{2k}(t) dt = 2^{1/2-k} pi^{1/4} Gamma(2k) / (Gamma(k) sqrt((2k)!)),
/// with Gamma(2k)/Gamma(k) -> 1/2 at k = 0.
double half_line_integral_even(int k);

/// int_0^inf h_{2k+1}(t) dt = 2^{k+1} k! / sqrt(2 (2k+1)! sqrt(pi))
///                            * sum_{i<=k} C(i-1/2, i) (-1)^i.
double half_line_integral_odd(int k);

/// Max over samples of |H_{2k+1}(t) - (-1)^k 2^{2k+1} k! L_k^{1/2}(t^2) t| / (1 + |H_{2k+1}(t)|).
/// With drop_factor_two the right-hand side uses 2^{2k} instead, the variant
/// that is off by a factor of two.
double laguerre_hermite_residual(int k, std::span<const double> t_samples,
                                 bool drop_factor_two = false);

}  // namespace hk
