#pragma once
// Fourier-Hermite calculus on R^n: multi-indices, sparse coefficient states,
// the oscillator propagator, projections, projection kernels, and weighted
// level integrals reduced through time orthogonality.
//
// Fourier transform convention (used by bessel_sobolev_norm):
//   f^(xi) = (2 pi)^{-n/2} int f(x) e^{-i x.xi} dx,
// unitary with angular frequency.  Under it h_k^ = (-i)^k h_k exactly.

#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace hk::spectral {

using Complex = std::complex<double>;

struct MultiIndex {
  std::vector<int> degrees;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> d);
  MultiIndex(std::initializer_list<int> d);

  int dim() const { return static_cast<int>(degrees.size()); }
  int order() const;
  int operator[](int i) const { return degrees[i]; }

  // Lexicographic on the degree tuple.
  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;
};

/// Number of multi-indices of order k in n variables, C(k+n-1, n-1).
/// Throws CapabilityError if it does not fit in 63 bits.
std::uint64_t level_dimension(int n, int k);

struct EigenLevel {
  int n = 1;
  int k = 0;
  long eigenvalue = 1;  // 2k + n
  std::uint64_t dimension_count = 1;

  static EigenLevel make(int n, int k);
};

/// All alpha with |alpha| = k in lexicographic order.  Throws CapabilityError
/// above `limit` entries.
std::vector<MultiIndex> enumerate_multiindices(int n, int k, std::uint64_t limit = 5'000'000);

/// Phi_alpha(x) = prod h_{alpha_i}(x_i).
double evaluate_phi(const MultiIndex& alpha, std::span<const double> x);

/// Sparse coefficient set {alpha -> a_alpha} with all |alpha| <= k_max.
class SpectralState {
 public:
  using Map = std::map<MultiIndex, Complex>;

  SpectralState(int n, int k_max);

  int dim() const { return n_; }
  int k_max() const { return k_max_; }
  const Map& coefficients() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  /// Adds or replaces a coefficient; validates dimension and order.
  void set(const MultiIndex& alpha, Complex a);
  Complex get(const MultiIndex& alpha) const;

  double norm_sq() const;
  double norm() const;
  /// Levels k that carry at least one stored coefficient, ascending.
  std::vector<int> levels() const;
  /// sum a_alpha Phi_alpha(x)
  Complex evaluate(std::span<const double> x) const;
  SpectralState scaled(Complex c) const;

 private:
  int n_;
  int k_max_;
  Map coeffs_;
};

struct CoefficientOptions {
  int scale = 1;             // Gauss-Hermite nodes per axis = scale * (k_max + 2)
  bool doubling_gate = true;
  double tolerance = 1e-10;  // max coefficient change under doubling
};

/// a_alpha = int f Phi_alpha by tensor Gauss-Hermite quadrature.  Throws
/// ToleranceError when the doubling gate trips.
SpectralState coefficients_from_function(
    const std::function<Complex(std::span<const double>)>& f, int n, int k_max,
    const CoefficientOptions& opts = {});

/// a_alpha -> e^{-i (2|alpha| + n) t} a_alpha
SpectralState propagate(const SpectralState& state, double t);

/// Keeps only |alpha| = k.
SpectralState project(const SpectralState& state, int k);

struct KernelQuery {
  int n = 1;
  int k = 0;
  std::vector<double> x;
  std::vector<double> y;
};

/// Phi_k(x, y) = sum_{|alpha|=k} Phi_alpha(x) Phi_alpha(y), by convolving the
/// per-axis sequences h_j(x_i) h_j(y_i).
double projection_kernel(const KernelQuery& q);
/// The same sum by explicit enumeration (reference path).
double projection_kernel_bruteforce(const KernelQuery& q);

/// max over grid points of |Phi_k(x, x)| / k^{n/2 - 1}, k >= 1.
double kernel_diagonal_ratio(int n, int k, const std::vector<std::vector<double>>& grid);

/// Points on rays through the origin out to beyond the turning point of level k_max.
std::vector<std::vector<double>> kernel_scan_grid(int n, int k_max, int samples_per_ray = 400);

/// Weight |x_W|^{-2 delta} with x_W the coordinates listed in `axes`.
struct Weight {
  double delta = 0.0;
  std::vector<int> axes;
};

/// Throws InputError / CapabilityError unless the weight is integrable against
/// the state: |W| = 1 needs delta < 1/2, or delta <= 1 when the state is odd
/// in that axis; |W| = 2 needs delta < 1; |W| = 3 needs delta <= 1; |W| >= 4
/// is not supported.
void require_admissible(const SpectralState& state, const Weight& w);

struct LevelOptions {
  int scale = 1;
};

/// (k, int |P_k f|^2 |x_W|^{-2 delta} dx) for every populated level.
std::vector<std::pair<int, double>> level_weighted_integrals(const SpectralState& state,
                                                             const Weight& w,
                                                             const LevelOptions& opts = {});

/// int_0^{2 pi} int |u|^2 |x_W|^{-2 delta} dx dt = 2 pi sum_k (level integrals).
double time_avg_weighted(const SpectralState& state, const Weight& w,
                         const LevelOptions& opts = {});

/// Matrix G_{ab} = int Phi_a Phi_b |x_W|^{-2 delta} dx over the level-k basis
/// (enumerate_multiindices order).  Blocks of mismatched parity on a weighted
/// axis, or of differing unweighted components, are exact zeros.
struct LevelGram {
  int n = 1;
  int k = 0;
  std::vector<MultiIndex> basis;
  Eigen::MatrixXd G;
};

LevelGram level_gram(int n, int k, const Weight& w, const LevelOptions& opts = {});

/// (sum (2|alpha| + n)^s |a_alpha|^2)^{1/2}
double hermite_sobolev_norm(const SpectralState& state, double s);

struct FourierOptions {
  int scale = 1;  // multiplies every node count of the polar rule
};

/// ||(I - Delta)^{s/2} f|| from (int (1 + |xi|^2)^s |f^(xi)|^2 dxi)^{1/2}.
double bessel_sobolev_norm(const SpectralState& state, double s, const FourierOptions& opts = {});

/// (odd part, even part) with respect to x_axis.
std::pair<SpectralState, SpectralState> parity_decompose(const SpectralState& state, int axis);

struct CollapseOptions {
  int scale = 1;  // nodes per axis = scale * (k_max + 2)
};

/// 2 pi sum_E int_{R^3} |sum_{lambda_alpha = E} a_alpha Phi_alpha(x, x, x)|^2 dx for n = 9.
double collapse_trace_norm(const SpectralState& state, const CollapseOptions& opts = {});

/// sum (2|alpha| + n)^2 |a_alpha|^2 = ||(-Delta + |x|^2) f||^2
double oscillator_norm_sq(const SpectralState& state);

/// JSON object {"n", "k_max", "coefficients": [[[alpha...], re, im], ...]}.
std::string to_json(const SpectralState& state);
SpectralState from_json(std::string_view text);

}  // namespace hk::spectral
