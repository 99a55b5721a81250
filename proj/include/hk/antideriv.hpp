#pragma once
// Antiderivatives of 1D Hermite functions and their exact L2 norms.
//
//   X_{2k+1}(x) = int_{-inf}^x h_{2k+1}(t) dt
//   X_{2k}(x)   = int_{-inf}^x sign(t) h_{2k}(t) dt
//
// The odd family telescopes into a finite Hermite expansion,
//   X_{2k+1} = -sqrt(2/(2k+1)) h_{2k} + sqrt(2k/(2k+1)) X_{2k-1},  X_1 = -sqrt(2) h_0,
// so it is evaluated exactly.  The even family is evaluated by quadrature.

#include <utility>
#include <vector>

#include "hk/special.hpp"

namespace hk::antideriv {

enum class Parity { odd, even };

struct AntiderivativeSeries {
  Parity parity = Parity::odd;
  int half_degree = 0;
  // (j, b_j) with X = sum b_j h_j; empty for the even family.
  std::vector<std::pair<int, double>> expansion;
  bool quadrature_fallback = false;

  double operator()(double x) const;
};

AntiderivativeSeries series_odd(int k);
AntiderivativeSeries series_even(int k);

/// X_{2k+1}(x) from the finite expansion.
double x_odd(int k, double x);
/// X_{2k}(x) = int_0^{|x|} h_{2k} - int_0^inf h_{2k}, by panel quadrature.
double x_even(int k, double x);

/// Always 2.
double norm_sq_odd_closed(int k);
/// I_{2k+1} = 2/(2k+1) + 2k/(2k+1) I_{2k-1},  I_1 = 2.
double norm_sq_odd_recursive(int k);

/// sum_{i=0}^k C(numerator, i) with numerator = +1/2 or -1/2, built term by term.
double partial_binomial_sum(int k, double numerator);

/// 2 (-1 + sqrt(2) sum_{i<=k} C(1/2, i)).
double norm_sq_even_closed(int k);
/// 2 V_{2k} from the V recursion seeded at V_0 = ||X_0||^2 / 2.
double norm_sq_even_recursive(int k);
/// V_0 by quadrature; throws ToleranceError if it disagrees with the closed form.
double even_seed_by_quadrature();

/// X_{2k}(0)^2 = (1/4) (int_R h_{2k})^2.
double x_even_at_zero_sq(int k);
/// X_{2k}(0)^2 sqrt(2k), k >= 1; stays bounded in k.
double x_even_at_zero_normalized(int k);

/// |LHS - RHS| of
///   (1/(k+1)) sum_{i<=k} C(-1/2,i) + (2k+1)/(2k+2) sum_{i<=k} C(1/2,i) = sum_{i<=k+1} C(1/2,i).
double merge_identity_check(int k);
/// Same difference in exact rational arithmetic.
special::Rational merge_identity_exact(int k);

enum class NormSource { closed_form, recursion, quadrature };

/// I_odd[k] = ||X_{2k+1}||^2, V_even[k] = ||X_{2k}||^2 / 2 for k = 0..k_max.
struct NormTable {
  std::vector<double> I_odd;
  std::vector<double> V_even;
  NormSource source = NormSource::closed_form;
};

NormTable norm_table(int k_max, NormSource source);

/// Whole-line truncation half-width sqrt(2 (2 k_max + 1)) + 10.
double truncation(int k_max);

/// int_R h_{2k}(x) (int_{-inf}^x h_{2k-1}) dx with the inner integral done by
/// cumulative quadrature, k >= 1.
double junk_orthogonality(int k);

}  // namespace hk::antideriv
