#include "hk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "hk/errors.hpp"
#include "hk/hermite.hpp"
#include "hk/quadrature.hpp"
#include "hk/simd.hpp"

namespace hk::spectral {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_dim(int n) {
  if (n < 1) throw InputError("dimension must be at least 1");
}

// h_j at every node of one axis: table[j * N + q].
std::vector<double> axis_table(std::span<const double> nodes, int kmax) {
  std::vector<double> table(static_cast<std::size_t>(kmax + 1) * nodes.size());
  simd::hermite_table(nodes, kmax, table);
  return table;
}

std::span<const double> row(const std::vector<double>& table, int j, std::size_t n) {
  return std::span<const double>(table).subspan(static_cast<std::size_t>(j) * n, n);
}

double weighted_abs_sq(std::span<const double> w, std::vector<double>& re, std::vector<double>& im,
                       std::vector<double>& scratch) {
  simd::multiply(w, re, scratch);
  double s = simd::dot(scratch, re);
  simd::multiply(w, im, scratch);
  s += simd::dot(scratch, im);
  return s;
}

void validate_axes(int n, const std::vector<int>& axes) {
  std::set<int> seen;
  for (int a : axes) {
    if (a < 0 || a >= n) throw InputError("weight axis out of range");
    if (!seen.insert(a).second) throw InputError("weight axis listed twice");
  }
}

std::vector<int> complement(int n, const std::vector<int>& axes) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    if (std::find(axes.begin(), axes.end(), i) == axes.end()) out.push_back(i);
  }
  return out;
}

std::vector<int> pick(const MultiIndex& a, const std::vector<int>& axes) {
  std::vector<int> out;
  out.reserve(axes.size());
  for (int i : axes) out.push_back(a[i]);
  return out;
}

bool odd_in_axis(const SpectralState& s, int axis) {
  for (const auto& [alpha, a] : s.coefficients()) {
    if (a != Complex{} && alpha[axis] % 2 == 0) return false;
  }
  return true;
}

// Node rule in the weighted coordinates plus per-axis Hermite tables.
struct WeightedNodes {
  quad::PointRule rule;
  std::vector<std::vector<double>> tables;  // one per weighted axis

  WeightedNodes(int d, double delta, int k, int scale, bool vanishing)
      : rule(quad::gaussian_singular_rule(d, delta, k, scale, vanishing)) {
    for (int c = 0; c < d; ++c) tables.push_back(axis_table(rule.axis(c), k));
  }

  std::size_t size() const { return rule.size(); }

  void phi(const std::vector<int>& degrees, std::vector<double>& out) const {
    const std::size_t N = size();
    out.resize(N);
    const auto first = row(tables[0], degrees[0], N);
    std::copy(first.begin(), first.end(), out.begin());
    for (std::size_t c = 1; c < degrees.size(); ++c) simd::multiply(out, row(tables[c], degrees[c], N), out);
  }
};

bool needs_vanishing(const Weight& w) { return w.axes.size() == 1 && w.delta >= 0.5; }

}  // namespace

MultiIndex::MultiIndex(std::vector<int> d) : degrees(std::move(d)) {
  for (int v : degrees) {
    if (v < 0) throw InputError("multi-index entries must be nonnegative");
  }
}

MultiIndex::MultiIndex(std::initializer_list<int> d) : MultiIndex(std::vector<int>(d)) {}

int MultiIndex::order() const {
  int s = 0;
  for (int v : degrees) s += v;
  return s;
}

std::uint64_t level_dimension(int n, int k) {
  require_dim(n);
  if (k < 0) throw InputError("level must be nonnegative");
  // C(k+n-1, min(k, n-1)) built incrementally; each partial product is itself
  // a binomial coefficient, so the division is exact.
  const std::uint64_t r = static_cast<std::uint64_t>(std::min(k, n - 1));
  const std::uint64_t top = static_cast<std::uint64_t>(k) + n - 1;
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    c = c * (top - r + i) / i;
    if (c > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max())) {
      throw CapabilityError("level dimension overflows");
    }
  }
  return static_cast<std::uint64_t>(c);
}

EigenLevel EigenLevel::make(int n, int k) {
  return {n, k, 2L * k + n, level_dimension(n, k)};
}

std::vector<MultiIndex> enumerate_multiindices(int n, int k, std::uint64_t limit) {
  const std::uint64_t count = level_dimension(n, k);
  if (count > limit) {
    throw CapabilityError("level has " + std::to_string(count) + " multi-indices, above limit " +
                          std::to_string(limit));
  }
  std::vector<MultiIndex> out;
  out.reserve(count);
  // Lexicographic order puts the smallest first entry first; walk it as an
  // odometer over compositions of k.
  std::vector<int> a(n, 0);
  a[n - 1] = k;
  while (true) {
    out.emplace_back(a);
    // Find the rightmost position before the last with something to its right.
    int i = n - 2;
    while (i >= 0) {
      int rest = 0;
      for (int j = i + 1; j < n; ++j) rest += a[j];
      if (rest > 0) break;
      --i;
    }
    if (i < 0) break;
    int rest = 0;
    for (int j = i + 1; j < n; ++j) rest += a[j];
    ++a[i];
    --rest;
    for (int j = i + 1; j < n; ++j) a[j] = 0;
    a[n - 1] = rest;
  }
  return out;
}

double evaluate_phi(const MultiIndex& alpha, std::span<const double> x) {
  if (static_cast<std::size_t>(alpha.dim()) != x.size()) {
    throw InputError("evaluate_phi: dimension mismatch");
  }
  const HermiteBasis& basis = HermiteBasis::shared();
  double v = 1.0;
  for (int i = 0; i < alpha.dim(); ++i) v *= eval_h(basis, alpha[i], x[i]);
  return v;
}

SpectralState::SpectralState(int n, int k_max) : n_(n), k_max_(k_max) {
  require_dim(n);
  if (k_max < 0) throw InputError("k_max must be nonnegative");
  if (k_max > HermiteBasis::kDegreeCap) throw CapabilityError("k_max above Hermite basis cap");
}

void SpectralState::set(const MultiIndex& alpha, Complex a) {
  if (alpha.dim() != n_) throw InputError("multi-index dimension does not match state");
  if (alpha.order() > k_max_) throw InputError("multi-index order above k_max");
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
    throw InputError("non-finite coefficient");
  }
  coeffs_[alpha] = a;
}

Complex SpectralState::get(const MultiIndex& alpha) const {
  const auto it = coeffs_.find(alpha);
  return it == coeffs_.end() ? Complex{} : it->second;
}

double SpectralState::norm_sq() const {
  double s = 0.0;
  for (const auto& [alpha, a] : coeffs_) s += std::norm(a);
  return s;
}

double SpectralState::norm() const { return std::sqrt(norm_sq()); }

std::vector<int> SpectralState::levels() const {
  std::set<int> ks;
  for (const auto& [alpha, a] : coeffs_) ks.insert(alpha.order());
  return {ks.begin(), ks.end()};
}

Complex SpectralState::evaluate(std::span<const double> x) const {
  if (x.size() != static_cast<std::size_t>(n_)) throw InputError("evaluate: dimension mismatch");
  std::vector<std::vector<double>> tabs;
  tabs.reserve(n_);
  for (int i = 0; i < n_; ++i) tabs.push_back(eval_h_all(HermiteBasis::shared(), k_max_, x[i]));
  Complex s{};
  for (const auto& [alpha, a] : coeffs_) {
    double phi = 1.0;
    for (int i = 0; i < n_; ++i) phi *= tabs[i][alpha[i]];
    s += a * phi;
  }
  return s;
}

SpectralState SpectralState::scaled(Complex c) const {
  SpectralState out(n_, k_max_);
  for (const auto& [alpha, a] : coeffs_) out.coeffs_[alpha] = c * a;
  return out;
}

namespace {

SpectralState coefficients_at(const std::function<Complex(std::span<const double>)>& f, int n,
                              int k_max, int m) {
  const quad::PointRule rule = quad::gauss_hermite_tensor(n, m);
  const std::size_t N = rule.size();
  std::vector<std::vector<double>> tabs;
  for (int d = 0; d < n; ++d) tabs.push_back(axis_table(rule.axis(d), k_max));
  std::vector<Complex> wf(N);
  std::vector<double> pt(n);
  for (std::size_t q = 0; q < N; ++q) {
    for (int d = 0; d < n; ++d) pt[d] = rule.coords[d * N + q];
    wf[q] = rule.weights[q] * f(pt);
  }
  std::vector<double> wr(N), wi(N), phi(N);
  for (std::size_t q = 0; q < N; ++q) {
    wr[q] = wf[q].real();
    wi[q] = wf[q].imag();
  }
  SpectralState out(n, k_max);
  for (int k = 0; k <= k_max; ++k) {
    for (const MultiIndex& alpha : enumerate_multiindices(n, k)) {
      const auto first = row(tabs[0], alpha[0], N);
      std::copy(first.begin(), first.end(), phi.begin());
      for (int d = 1; d < n; ++d) simd::multiply(phi, row(tabs[d], alpha[d], N), phi);
      out.set(alpha, Complex(simd::dot(wr, phi), simd::dot(wi, phi)));
    }
  }
  return out;
}

}  // namespace

SpectralState coefficients_from_function(const std::function<Complex(std::span<const double>)>& f,
                                         int n, int k_max, const CoefficientOptions& opts) {
  require_dim(n);
  if (opts.scale < 1) throw InputError("coefficients_from_function: scale must be >= 1");
  const int m = opts.scale * (k_max + 2);
  SpectralState base = coefficients_at(f, n, k_max, m);
  if (opts.doubling_gate) {
    const SpectralState fine = coefficients_at(f, n, k_max, 2 * m);
    double worst = 0.0;
    for (const auto& [alpha, a] : base.coefficients()) worst = std::max(worst, std::abs(a - fine.get(alpha)));
    if (worst > opts.tolerance) {
      throw ToleranceError("coefficient quadrature not doubling-stable: change " + std::to_string(worst));
    }
  }
  return base;
}

SpectralState propagate(const SpectralState& state, double t) {
  if (!std::isfinite(t)) throw InputError("propagate: non-finite time");
  SpectralState out(state.dim(), state.k_max());
  for (const auto& [alpha, a] : state.coefficients()) {
    const double lambda = 2.0 * alpha.order() + state.dim();
    out.set(alpha, a * std::polar(1.0, -lambda * t));
  }
  return out;
}

SpectralState project(const SpectralState& state, int k) {
  SpectralState out(state.dim(), state.k_max());
  for (const auto& [alpha, a] : state.coefficients()) {
    if (alpha.order() == k) out.set(alpha, a);
  }
  return out;
}

double projection_kernel(const KernelQuery& q) {
  require_dim(q.n);
  if (q.k < 0) throw InputError("projection_kernel: negative level");
  if (q.x.size() != static_cast<std::size_t>(q.n) || q.y.size() != static_cast<std::size_t>(q.n)) {
    throw InputError("projection_kernel: dimension mismatch");
  }
  const HermiteBasis& basis = HermiteBasis::shared();
  // poly[j] accumulates the coefficient of z^j in prod_i sum_j h_j(x_i) h_j(y_i) z^j.
  std::vector<double> poly(q.k + 1, 0.0);
  poly[0] = 1.0;
  std::vector<double> next(q.k + 1);
  for (int i = 0; i < q.n; ++i) {
    const std::vector<double> hx = eval_h_all(basis, q.k, q.x[i]);
    const std::vector<double> hy = eval_h_all(basis, q.k, q.y[i]);
    std::fill(next.begin(), next.end(), 0.0);
    for (int a = 0; a <= q.k; ++a) {
      if (poly[a] == 0.0) continue;
      for (int b = 0; a + b <= q.k; ++b) next[a + b] += poly[a] * hx[b] * hy[b];
    }
    poly.swap(next);
  }
  return poly[q.k];
}

double projection_kernel_bruteforce(const KernelQuery& q) {
  double s = 0.0;
  for (const MultiIndex& alpha : enumerate_multiindices(q.n, q.k)) {
    s += evaluate_phi(alpha, q.x) * evaluate_phi(alpha, q.y);
  }
  return s;
}

double kernel_diagonal_ratio(int n, int k, const std::vector<std::vector<double>>& grid) {
  if (k < 1) throw InputError("kernel_diagonal_ratio: need k >= 1");
  const double scale = std::pow(static_cast<double>(k), 0.5 * n - 1.0);
  double worst = 0.0;
  for (const auto& x : grid) {
    worst = std::max(worst, std::abs(projection_kernel({n, k, x, x})) / scale);
  }
  return worst;
}

std::vector<std::vector<double>> kernel_scan_grid(int n, int k_max, int samples_per_ray) {
  require_dim(n);
  const double r_max = std::sqrt(2.0 * k_max + n) + 3.0;
  std::vector<std::vector<double>> rays;
  std::vector<double> e1(n, 0.0);
  e1[0] = 1.0;
  rays.push_back(e1);
  if (n > 1) {
    rays.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> skew(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      skew[i] = i + 1.0;
      s += skew[i] * skew[i];
    }
    for (double& v : skew) v /= std::sqrt(s);
    rays.push_back(skew);
  }
  std::vector<std::vector<double>> grid;
  for (const auto& dir : rays) {
    for (int i = 0; i <= samples_per_ray; ++i) {
      const double r = r_max * i / samples_per_ray;
      std::vector<double> p(n);
      for (int d = 0; d < n; ++d) p[d] = r * dir[d];
      grid.push_back(std::move(p));
    }
  }
  return grid;
}

namespace {

void check_weight(int n, const Weight& w, bool odd_on_single_axis) {
  validate_axes(n, w.axes);
  if (!std::isfinite(w.delta) || w.delta < 0.0) throw InputError("weight exponent must be >= 0");
  if (w.delta == 0.0) return;
  const std::size_t d = w.axes.size();
  if (d == 0) throw InputError("nonzero weight exponent needs at least one axis");
  if (d >= 4) throw CapabilityError("weights over four or more axes are not supported");
  if (d == 3 && w.delta > 1.0) throw InputError("three-axis weight needs delta <= 1");
  if (d == 2 && w.delta >= 1.0) throw InputError("two-axis weight needs delta < 1");
  if (d == 1) {
    if (w.delta > 1.0) throw InputError("one-axis weight needs delta <= 1");
    if (w.delta >= 0.5 && !odd_on_single_axis) {
      throw InputError("one-axis weight with delta >= 1/2 needs a state odd in that axis");
    }
  }
}

}  // namespace

void require_admissible(const SpectralState& state, const Weight& w) {
  const bool odd = w.axes.size() == 1 && w.axes[0] >= 0 && w.axes[0] < state.dim() &&
                   odd_in_axis(state, w.axes[0]);
  check_weight(state.dim(), w, odd);
}

std::vector<std::pair<int, double>> level_weighted_integrals(const SpectralState& state,
                                                             const Weight& w,
                                                             const LevelOptions& opts) {
  require_admissible(state, w);
  const int n = state.dim();
  // Group coefficients by level.
  std::map<int, std::vector<std::pair<const MultiIndex*, Complex>>> by_level;
  for (const auto& [alpha, a] : state.coefficients()) by_level[alpha.order()].emplace_back(&alpha, a);

  std::vector<std::pair<int, double>> out;
  if (w.delta == 0.0) {
    for (const auto& [k, entries] : by_level) {
      double s = 0.0;
      for (const auto& e : entries) s += std::norm(e.second);
      out.emplace_back(k, s);
    }
    return out;
  }
  const std::vector<int> free_axes = complement(n, w.axes);
  const int d = static_cast<int>(w.axes.size());
  for (const auto& [k, entries] : by_level) {
    const WeightedNodes nodes(d, w.delta, k, opts.scale, needs_vanishing(w));
    const std::size_t N = nodes.size();
    // Orthogonality in the unweighted coordinates splits the level into
    // groups sharing alpha_U; each group is integrated separately.
    std::map<std::vector<int>, std::vector<std::pair<const MultiIndex*, Complex>>> groups;
    for (const auto& e : entries) groups[pick(*e.first, free_axes)].push_back(e);
    std::vector<double> re(N), im(N), phi(N), scratch(N);
    double total = 0.0;
    for (const auto& [key, members] : groups) {
      std::fill(re.begin(), re.end(), 0.0);
      std::fill(im.begin(), im.end(), 0.0);
      for (const auto& [alpha, a] : members) {
        nodes.phi(pick(*alpha, w.axes), phi);
        simd::axpy(a.real(), phi, re);
        simd::axpy(a.imag(), phi, im);
      }
      total += weighted_abs_sq(nodes.rule.weights, re, im, scratch);
    }
    out.emplace_back(k, total);
  }
  return out;
}

double time_avg_weighted(const SpectralState& state, const Weight& w, const LevelOptions& opts) {
  double s = 0.0;
  for (const auto& [k, v] : level_weighted_integrals(state, w, opts)) s += v;
  return kTwoPi * s;
}

LevelGram level_gram(int n, int k, const Weight& w, const LevelOptions& opts) {
  require_dim(n);
  validate_axes(n, w.axes);
  LevelGram g;
  g.n = n;
  g.k = k;
  g.basis = enumerate_multiindices(n, k);
  const std::size_t B = g.basis.size();
  g.G = Eigen::MatrixXd::Zero(B, B);
  if (w.delta == 0.0) {
    g.G.setIdentity();
    return g;
  }
  // A one-axis weight with delta >= 1/2 is only integrable between functions
  // odd in that axis; only those entries are formed.
  check_weight(n, w, true);

  const std::vector<int> free_axes = complement(n, w.axes);
  const int d = static_cast<int>(w.axes.size());
  const bool vanishing = needs_vanishing(w);
  const WeightedNodes nodes(d, w.delta, k, opts.scale, vanishing);
  const std::size_t N = nodes.size();

  std::map<std::vector<int>, std::vector<double>> phi_cache;   // alpha_W -> Phi at nodes
  std::map<std::vector<int>, std::vector<double>> wphi_cache;  // alpha_W -> w * Phi
  auto phi_of = [&](const std::vector<int>& key) -> const std::vector<double>& {
    auto it = phi_cache.find(key);
    if (it == phi_cache.end()) {
      std::vector<double> v;
      nodes.phi(key, v);
      std::vector<double> wv(N);
      simd::multiply(nodes.rule.weights, v, wv);
      wphi_cache.emplace(key, std::move(wv));
      it = phi_cache.emplace(key, std::move(v)).first;
    }
    return it->second;
  };

  std::vector<std::vector<int>> wkeys(B), ukeys(B);
  for (std::size_t i = 0; i < B; ++i) {
    wkeys[i] = pick(g.basis[i], w.axes);
    ukeys[i] = pick(g.basis[i], free_axes);
  }
  auto parity_match = [&](std::size_t i, std::size_t j) {
    for (int c = 0; c < d; ++c) {
      if ((wkeys[i][c] - wkeys[j][c]) % 2 != 0) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < B; ++i) {
    if (vanishing && wkeys[i][0] % 2 == 0) continue;
    const std::vector<double>& pi = phi_of(wkeys[i]);
    const std::vector<double>& wpi = wphi_cache.at(wkeys[i]);
    for (std::size_t j = i; j < B; ++j) {
      if (ukeys[i] != ukeys[j] || !parity_match(i, j)) continue;
      if (vanishing && wkeys[j][0] % 2 == 0) continue;
      const double v = (wkeys[i] == wkeys[j]) ? simd::dot(wpi, pi) : simd::dot(wpi, phi_of(wkeys[j]));
      g.G(i, j) = v;
      g.G(j, i) = v;
    }
  }
  return g;
}

double hermite_sobolev_norm(const SpectralState& state, double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("hermite_sobolev_norm: need s >= 0");
  double sum = 0.0;
  for (const auto& [alpha, a] : state.coefficients()) {
    sum += std::pow(2.0 * alpha.order() + state.dim(), s) * std::norm(a);
  }
  return std::sqrt(sum);
}

double bessel_sobolev_norm(const SpectralState& state, double s, const FourierOptions& opts) {
  if (!(s >= 0.0) || !std::isfinite(s)) throw InputError("bessel_sobolev_norm: need s >= 0");
  if (opts.scale < 1) throw InputError("bessel_sobolev_norm: scale must be >= 1");
  const int n = state.dim();
  if (n > 3) throw CapabilityError("bessel_sobolev_norm: n <= 3 only");
  const int kmax = state.k_max();
  // (1 + |xi|^2)^s is analytic in a strip of half-width 1 around the real
  // axis, so short Gauss-Legendre panels in r converge geometrically for any
  // s; the angular part is exact for the polynomial factor.
  const double R = quad::default_radius(kmax, n);
  quad::RadialSizes sizes;
  sizes.nodes = 16;
  sizes.levels = 0;
  sizes.panels = static_cast<int>(std::ceil(2.0 * R));
  sizes = sizes.scaled(opts.scale);
  sizes.levels = 0;
  const quad::Rule1D radial = quad::radial_rule(n - 1.0, R, sizes);
  std::vector<double> rw(radial.size());
  for (std::size_t i = 0; i < radial.size(); ++i) {
    rw[i] = radial.weights[i] * std::pow(1.0 + radial.nodes[i] * radial.nodes[i], s);
  }
  const quad::PointRule rule = quad::spherical_product(n, radial.nodes, rw, kmax, opts.scale);
  const std::size_t N = rule.size();
  std::vector<std::vector<double>> tabs;
  for (int d = 0; d < n; ++d) tabs.push_back(axis_table(rule.axis(d), kmax));
  std::vector<double> re(N, 0.0), im(N, 0.0), phi(N), scratch(N);
  for (const auto& [alpha, a] : state.coefficients()) {
    // (-i)^{|alpha|} a
    Complex c = a;
    switch (alpha.order() % 4) {
      case 1: c = Complex(a.imag(), -a.real()); break;
      case 2: c = -a; break;
      case 3: c = Complex(-a.imag(), a.real()); break;
      default: break;
    }
    const auto first = row(tabs[0], alpha[0], N);
    std::copy(first.begin(), first.end(), phi.begin());
    for (int d = 1; d < n; ++d) simd::multiply(phi, row(tabs[d], alpha[d], N), phi);
    simd::axpy(c.real(), phi, re);
    simd::axpy(c.imag(), phi, im);
  }
  return std::sqrt(weighted_abs_sq(rule.weights, re, im, scratch));
}

std::pair<SpectralState, SpectralState> parity_decompose(const SpectralState& state, int axis) {
  if (axis < 0 || axis >= state.dim()) throw InputError("parity_decompose: axis out of range");
  SpectralState odd(state.dim(), state.k_max());
  SpectralState even(state.dim(), state.k_max());
  for (const auto& [alpha, a] : state.coefficients()) {
    (alpha[axis] % 2 == 1 ? odd : even).set(alpha, a);
  }
  return {std::move(odd), std::move(even)};
}

double collapse_trace_norm(const SpectralState& state, const CollapseOptions& opts) {
  if (state.dim() != 9) throw InputError("collapse_trace_norm: state must live in R^9");
  if (state.k_max() > 4) throw CapabilityError("collapse_trace_norm: k_max <= 4 only");
  if (opts.scale < 1) throw InputError("collapse_trace_norm: scale must be >= 1");
  const int kmax = state.k_max();
  const quad::PointRule rule = quad::gauss_hermite_tensor(3, opts.scale * (kmax + 2), std::sqrt(3.0));
  const std::size_t N = rule.size();
  std::vector<std::vector<double>> tabs;
  for (int d = 0; d < 3; ++d) tabs.push_back(axis_table(rule.axis(d), kmax));

  std::map<int, std::vector<std::pair<const MultiIndex*, Complex>>> by_level;
  for (const auto& [alpha, a] : state.coefficients()) by_level[alpha.order()].emplace_back(&alpha, a);

  std::vector<double> re(N), im(N), phi(N), scratch(N);
  double total = 0.0;
  for (const auto& [k, entries] : by_level) {
    std::fill(re.begin(), re.end(), 0.0);
    std::fill(im.begin(), im.end(), 0.0);
    for (const auto& [alpha, a] : entries) {
      // Coordinates (x, x, x): axis j of R^3 carries alpha_j, alpha_{j+3}, alpha_{j+6}.
      std::fill(phi.begin(), phi.end(), 1.0);
      for (int j = 0; j < 3; ++j) {
        for (int copy = 0; copy < 3; ++copy) {
          simd::multiply(phi, row(tabs[j], (*alpha)[j + 3 * copy], N), phi);
        }
      }
      simd::axpy(a.real(), phi, re);
      simd::axpy(a.imag(), phi, im);
    }
    total += weighted_abs_sq(rule.weights, re, im, scratch);
  }
  return kTwoPi * total;
}

double oscillator_norm_sq(const SpectralState& state) {
  double s = 0.0;
  for (const auto& [alpha, a] : state.coefficients()) {
    const double lambda = 2.0 * alpha.order() + state.dim();
    s += lambda * lambda * std::norm(a);
  }
  return s;
}

}  // namespace hk::spectral
