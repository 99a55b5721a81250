#include "hk/antideriv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hk/errors.hpp"
#include "hk/hermite.hpp"
#include "hk/quadrature.hpp"
#include "hk/simd.hpp"

namespace hk::antideriv {
namespace {

constexpr int kPanelNodes = 20;

void require_k(int k, int top, const char* what) {
  if (k < 0) throw InputError(std::string(what) + ": negative k");
  if (top > HermiteBasis::kDegreeCap) {
    throw CapabilityError(std::string(what) + ": degree above Hermite basis capacity");
  }
}

// Panel width resolving the oscillation of h_j for j <= top.
double panel_width(int top) { return std::min(0.5, 2.0 / std::sqrt(2.0 * top + 2.0)); }

// Gauss-Legendre panels on [a, b] that, for every node x, also carry a
// sub-rule for int_{panel start}^x.  Evaluates all Hermite degrees 0..top at
// every (sub)node in one batched pass and hands back cumulative integrals
// int_a^x h_j for each node x and degree j.
struct CumulativeTable {
  std::vector<double> x;        // panel nodes
  std::vector<double> w;        // panel weights
  std::vector<double> values;   // values[j * x.size() + q] = int_a^{x_q} h_j
  std::vector<double> totals;   // int_a^b h_j
};

CumulativeTable cumulative(double a, double b, int top) {
  const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / panel_width(top))));
  const quad::Rule1D gl = quad::gauss_legendre(kPanelNodes);
  const double h = (b - a) / panels;
  const std::size_t m = kPanelNodes;
  const std::size_t nodes = panels * m;
  const std::size_t degrees = static_cast<std::size_t>(top) + 1;

  CumulativeTable out;
  out.x.resize(nodes);
  out.w.resize(nodes);
  out.values.assign(degrees * nodes, 0.0);
  out.totals.assign(degrees, 0.0);

  std::vector<double> sub_x(m * m + m);
  std::vector<double> table(degrees * sub_x.size());
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    // Sub-nodes for [lo, x_i] (i < m), then the panel's own nodes.
    for (std::size_t i = 0; i < m; ++i) {
      const double xi = lo + 0.5 * h * (gl.nodes[i] + 1.0);
      out.x[p * m + i] = xi;
      out.w[p * m + i] = 0.5 * h * gl.weights[i];
      for (std::size_t j = 0; j < m; ++j) {
        sub_x[i * m + j] = lo + 0.5 * (xi - lo) * (gl.nodes[j] + 1.0);
      }
      sub_x[m * m + i] = xi;
    }
    simd::hermite_table(sub_x, top, table);
    const std::size_t stride = sub_x.size();
    for (std::size_t d = 0; d < degrees; ++d) {
      const double* row = table.data() + d * stride;
      for (std::size_t i = 0; i < m; ++i) {
        const double half = 0.5 * (out.x[p * m + i] - lo);
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += gl.weights[j] * row[i * m + j];
        out.values[d * nodes + p * m + i] = out.totals[d] + half * s;
      }
      double panel = 0.0;
      for (std::size_t i = 0; i < m; ++i) panel += out.w[p * m + i] * row[m * m + i];
      out.totals[d] += panel;
    }
  }
  return out;
}

double sum_binomial(int k, double numerator) {
  double term = 1.0;
  double sum = 1.0;
  for (int i = 0; i < k; ++i) {
    term *= (numerator - i) / (i + 1);
    sum += term;
  }
  return sum;
}

}  // namespace

double AntiderivativeSeries::operator()(double x) const {
  return parity == Parity::odd ? x_odd(half_degree, x) : x_even(half_degree, x);
}

AntiderivativeSeries series_odd(int k) {
  require_k(k, 2 * k, "series_odd");
  AntiderivativeSeries s;
  s.parity = Parity::odd;
  s.half_degree = k;
  // Unroll the ladder from the top: coefficient of h_{2j} is
  // -sqrt(2/(2j+1)) * prod_{i=j+1}^{k} sqrt(2i/(2i+1)).
  double ladder = 1.0;
  s.expansion.reserve(k + 1);
  for (int j = k; j >= 0; --j) {
    s.expansion.emplace_back(2 * j, -std::sqrt(2.0 / (2 * j + 1)) * ladder);
    if (j > 0) ladder *= std::sqrt(2.0 * j / (2.0 * j + 1.0));
  }
  return s;
}

AntiderivativeSeries series_even(int k) {
  require_k(k, 2 * k, "series_even");
  AntiderivativeSeries s;
  s.parity = Parity::even;
  s.half_degree = k;
  s.quadrature_fallback = true;
  return s;
}

double x_odd(int k, double x) {
  require_k(k, 2 * k, "x_odd");
  if (!std::isfinite(x)) throw InputError("x_odd: non-finite argument");
  const AntiderivativeSeries s = series_odd(k);
  const std::vector<double> h = eval_h_all(HermiteBasis::shared(), 2 * k, x);
  double total = 0.0;
  for (const auto& [j, b] : s.expansion) total += b * h[j];
  return total;
}

double x_even(int k, double x) {
  require_k(k, 2 * k, "x_even");
  if (!std::isfinite(x)) throw InputError("x_even: non-finite argument");
  const double tail = half_line_integral_even(k);
  const double r = std::min(std::abs(x), truncation(k));
  if (r == 0.0) return -tail;
  const int panels = std::max(1, static_cast<int>(std::ceil(r / panel_width(2 * k))));
  const quad::Rule1D rule = quad::panel_rule(0.0, r, panels, kPanelNodes);
  std::vector<double> table(static_cast<std::size_t>(2 * k + 1) * rule.size());
  simd::hermite_table(rule.nodes, 2 * k, table);
  const double inner = simd::dot(rule.weights, std::span<const double>(table).subspan(
                                                   static_cast<std::size_t>(2 * k) * rule.size()));
  return inner - tail;
}

double norm_sq_odd_closed(int k) {
  if (k < 0) throw InputError("norm_sq_odd_closed: negative k");
  return 2.0;
}

double norm_sq_odd_recursive(int k) {
  if (k < 0) throw InputError("norm_sq_odd_recursive: negative k");
  double value = 2.0;
  for (int j = 1; j <= k; ++j) value = 2.0 / (2 * j + 1) + (2.0 * j / (2 * j + 1)) * value;
  return value;
}

double partial_binomial_sum(int k, double numerator) {
  if (k < 0) throw InputError("partial_binomial_sum: negative k");
  if (numerator != 0.5 && numerator != -0.5) {
    throw InputError("partial_binomial_sum: numerator must be +1/2 or -1/2");
  }
  return sum_binomial(k, numerator);
}

double norm_sq_even_closed(int k) {
  if (k < 0) throw InputError("norm_sq_even_closed: negative k");
  return 2.0 * (-1.0 + std::numbers::sqrt2 * sum_binomial(k, 0.5));
}

double even_seed_by_quadrature() {
  static const double seed = [] {
    const NormTable t = norm_table(0, NormSource::quadrature);
    const double v0 = t.V_even[0];
    const double expected = 0.5 * norm_sq_even_closed(0);
    if (std::abs(v0 - expected) > 1e-12) {
      throw ToleranceError("V_0 by quadrature disagrees with the closed form");
    }
    return v0;
  }();
  return seed;
}

double norm_sq_even_recursive(int k) {
  if (k < 0) throw InputError("norm_sq_even_recursive: negative k");
  double v = even_seed_by_quadrature();
  double term = 1.0;  // C(-1/2, j)
  double sum = 1.0;   // sum_{i<=j} C(-1/2, i)
  for (int j = 0; j < k; ++j) {
    v = -1.0 / (2 * j + 2) + (std::numbers::sqrt2 / (j + 1)) * sum + ((2.0 * j + 1) / (2 * j + 2)) * v;
    term *= (-0.5 - j) / (j + 1);
    sum += term;
  }
  return 2.0 * v;
}

double x_even_at_zero_sq(int k) {
  if (k < 0) throw InputError("x_even_at_zero_sq: negative k");
  const double full = 2.0 * half_line_integral_even(k);
  return 0.25 * full * full;
}

double x_even_at_zero_normalized(int k) {
  if (k < 1) throw InputError("x_even_at_zero_normalized: need k >= 1");
  return x_even_at_zero_sq(k) * std::sqrt(2.0 * k);
}

double merge_identity_check(int k) {
  if (k < 0) throw InputError("merge_identity_check: negative k");
  const double lhs =
      sum_binomial(k, -0.5) / (k + 1) + ((2.0 * k + 1) / (2.0 * k + 2)) * sum_binomial(k, 0.5);
  return std::abs(lhs - sum_binomial(k + 1, 0.5));
}

special::Rational merge_identity_exact(int k) {
  if (k < 0) throw InputError("merge_identity_exact: negative k");
  using special::Rational;
  const Rational half(1, 2);
  const Rational lhs = special::partial_binomial_sum_exact(-half, k) / (k + 1) +
                      Rational(2 * k + 1, 2 * k + 2) * special::partial_binomial_sum_exact(half, k);
  return lhs - special::partial_binomial_sum_exact(half, k + 1);
}

double truncation(int k_max) { return std::sqrt(2.0 * (2.0 * k_max + 1.0)) + 10.0; }

NormTable norm_table(int k_max, NormSource source) {
  require_k(k_max, 2 * k_max + 1, "norm_table");
  NormTable t;
  t.source = source;
  t.I_odd.resize(k_max + 1);
  t.V_even.resize(k_max + 1);
  switch (source) {
    case NormSource::closed_form:
      for (int k = 0; k <= k_max; ++k) {
        t.I_odd[k] = norm_sq_odd_closed(k);
        t.V_even[k] = 0.5 * norm_sq_even_closed(k);
      }
      break;
    case NormSource::recursion:
      for (int k = 0; k <= k_max; ++k) {
        t.I_odd[k] = norm_sq_odd_recursive(k);
        t.V_even[k] = 0.5 * norm_sq_even_recursive(k);
      }
      break;
    case NormSource::quadrature: {
      const double T = truncation(k_max);
      const int top = 2 * k_max + 1;
      // Odd: X_{2k+1}(x) = int_{-T}^x h_{2k+1}.
      const CumulativeTable whole = cumulative(-T, T, top);
      const std::size_t n = whole.x.size();
      for (int k = 0; k <= k_max; ++k) {
        const double* X = whole.values.data() + static_cast<std::size_t>(2 * k + 1) * n;
        double s = 0.0;
        for (std::size_t q = 0; q < n; ++q) s += whole.w[q] * X[q] * X[q];
        t.I_odd[k] = s;
      }
      // Even: X_{2k}(x) = -int_x^T h_{2k} for x >= 0, even in x.
      const CumulativeTable half = cumulative(0.0, T, 2 * k_max);
      const std::size_t nh = half.x.size();
      for (int k = 0; k <= k_max; ++k) {
        const double* C = half.values.data() + static_cast<std::size_t>(2 * k) * nh;
        const double total = half.totals[2 * k];
        double s = 0.0;
        for (std::size_t q = 0; q < nh; ++q) {
          const double X = C[q] - total;
          s += half.w[q] * X * X;
        }
        t.V_even[k] = s;  // ||X||^2 / 2 = int_0^inf X^2
      }
      break;
    }
  }
  return t;
}

double junk_orthogonality(int k) {
  if (k < 1) throw InputError("junk_orthogonality: need k >= 1");
  require_k(k, 2 * k, "junk_orthogonality");
  const double T = truncation(k);
  const CumulativeTable c = cumulative(-T, T, 2 * k);
  const std::size_t n = c.x.size();
  std::vector<double> h(static_cast<std::size_t>(2 * k + 1) * n);
  simd::hermite_table(c.x, 2 * k, h);
  const double* outer = h.data() + static_cast<std::size_t>(2 * k) * n;
  const double* inner = c.values.data() + static_cast<std::size_t>(2 * k - 1) * n;
  double s = 0.0;
  for (std::size_t q = 0; q < n; ++q) s += c.w[q] * outer[q] * inner[q];
  return s;
}

}  // namespace hk::antideriv
