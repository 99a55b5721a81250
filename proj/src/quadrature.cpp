#include "hk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "hk/errors.hpp"

namespace hk::quad {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Symmetric tridiagonal (Jacobi) matrix of an orthonormal family:
//   off[j+1] p_{j+1}(x) = (x - diag[j]) p_j(x) - off[j] p_{j-1}(x),  p_0 = 1/sqrt(mu0).
// Both arrays hold m+1 entries so p_m can be formed for Newton's method.
struct JacobiMatrix {
  std::vector<double> diag;
  std::vector<double> off;  // off[0] unused
  double mu0 = 1.0;
};

enum class Envelope { none, gaussian, exponential };

double log_envelope(Envelope e, double x) {
  switch (e) {
    case Envelope::none: return 0.0;
    case Envelope::gaussian: return -0.5 * x * x;
    case Envelope::exponential: return -0.5 * x;
  }
  return 0.0;
}

// Enveloped orthonormal polynomials q_j = g p_j and r_j = g p_j' at x; returns
// q_m, r_m and the Christoffel sum sum_{j<m} q_j^2.
struct RecurrenceValue {
  double q = 0.0;
  double r = 0.0;
  double christoffel = 0.0;
};

RecurrenceValue orthonormal_at(const JacobiMatrix& jm, int m, Envelope env, double x) {
  const double g = std::exp(log_envelope(env, x));
  double q_prev = 0.0;
  double r_prev = 0.0;
  double q = g / std::sqrt(jm.mu0);
  double r = 0.0;
  double sum = 0.0;
  for (int j = 0; j < m; ++j) {
    sum += q * q;
    const double off_j = j > 0 ? jm.off[j] : 0.0;
    const double q_next = ((x - jm.diag[j]) * q - off_j * q_prev) / jm.off[j + 1];
    const double r_next = (q + (x - jm.diag[j]) * r - off_j * r_prev) / jm.off[j + 1];
    q_prev = q;
    r_prev = r;
    q = q_next;
    r = r_next;
  }
  return {q, r, sum};
}

Rule1D gauss_from_jacobi(const JacobiMatrix& jm, int m, Envelope env, RuleKind kind) {
  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(std::max(m - 1, 0));
  for (int j = 0; j < m; ++j) diag[j] = jm.diag[j];
  for (int j = 1; j < m; ++j) sub[j - 1] = jm.off[j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw ToleranceError("Gauss rule: eigenvalue solver failed");

  Rule1D rule;
  rule.kind = kind;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  rule.scaled_weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = es.eigenvalues()[i];
    for (int it = 0; it < 12; ++it) {
      const RecurrenceValue v = orthonormal_at(jm, m, env, x);
      if (v.r == 0.0) break;
      const double dx = v.q / v.r;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    const RecurrenceValue v = orthonormal_at(jm, m, env, x);
    rule.nodes[i] = x;
    rule.scaled_weights[i] = 1.0 / v.christoffel;
    rule.weights[i] = std::exp(2.0 * log_envelope(env, x) - std::log(v.christoffel));
  }
  return rule;
}

void symmetrize(Rule1D& rule) {
  const std::size_t m = rule.size();
  for (std::size_t i = 0; i < m / 2; ++i) {
    const std::size_t j = m - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    for (auto* w : {&rule.weights, &rule.scaled_weights}) {
      const double avg = 0.5 * ((*w)[i] + (*w)[j]);
      (*w)[i] = avg;
      (*w)[j] = avg;
    }
  }
  if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
}

void require_count(int m, int cap, const char* what) {
  if (m < 1) throw InputError(std::string(what) + ": need at least one node");
  if (m > cap) {
    throw CapabilityError(std::string(what) + ": node count above " + std::to_string(cap));
  }
}

void require_delta(double delta, double hi, bool inclusive, const char* what) {
  const bool ok = std::isfinite(delta) && delta >= 0.0 && (inclusive ? delta <= hi : delta < hi);
  if (!ok) {
    throw InputError(std::string(what) + ": delta must lie in [0, " + std::to_string(hi) +
                     (inclusive ? "]" : ")"));
  }
}

}  // namespace

double Rule1D::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
  return s;
}

Rule1D gauss_legendre(int m) {
  require_count(m, 4000, "gauss_legendre");
  JacobiMatrix jm;
  jm.diag.assign(m + 1, 0.0);
  jm.off.assign(m + 1, 0.0);
  for (int j = 1; j <= m; ++j) jm.off[j] = j / std::sqrt(4.0 * j * j - 1.0);
  jm.mu0 = 2.0;
  Rule1D rule = gauss_from_jacobi(jm, m, Envelope::none, RuleKind::gauss_legendre);
  symmetrize(rule);
  return rule;
}

Rule1D gauss_hermite(int m) {
  require_count(m, 600, "gauss_hermite");
  JacobiMatrix jm;
  jm.diag.assign(m + 1, 0.0);
  jm.off.assign(m + 1, 0.0);
  for (int j = 1; j <= m; ++j) jm.off[j] = std::sqrt(0.5 * j);
  jm.mu0 = std::sqrt(std::numbers::pi);
  Rule1D rule = gauss_from_jacobi(jm, m, Envelope::gaussian, RuleKind::gauss_hermite);
  symmetrize(rule);
  return rule;
}

Rule1D gauss_laguerre(int m, double alpha) {
  require_count(m, 300, "gauss_laguerre");
  if (!(alpha > -1.0)) throw InputError("gauss_laguerre: need alpha > -1");
  JacobiMatrix jm;
  jm.diag.resize(m + 1);
  jm.off.assign(m + 1, 0.0);
  for (int j = 0; j <= m; ++j) jm.diag[j] = 2.0 * j + alpha + 1.0;
  for (int j = 1; j <= m; ++j) jm.off[j] = std::sqrt(j * (j + alpha));
  jm.mu0 = std::tgamma(alpha + 1.0);
  return gauss_from_jacobi(jm, m, Envelope::exponential, RuleKind::gauss_laguerre);
}

Rule1D gauss_jacobi(int m, double a, double b) {
  require_count(m, 4000, "gauss_jacobi");
  if (!(a > -1.0) || !(b > -1.0)) throw InputError("gauss_jacobi: need a, b > -1");
  const double ab = a + b;
  JacobiMatrix jm;
  jm.diag.resize(m + 1);
  jm.off.assign(m + 1, 0.0);
  for (int j = 0; j <= m; ++j) {
    if (j == 0) {
      jm.diag[j] = (b - a) / (ab + 2.0);
    } else {
      const double s = 2.0 * j + ab;
      jm.diag[j] = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int j = 1; j <= m; ++j) {
    const double s = 2.0 * j + ab;
    double beta;
    if (j == 1) {
      beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      beta = 4.0 * j * (j + a) * (j + b) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    jm.off[j] = std::sqrt(beta);
  }
  jm.mu0 = std::exp((ab + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(ab + 2.0));
  return gauss_from_jacobi(jm, m, Envelope::none, RuleKind::gauss_jacobi);
}

Rule1D panel_rule(double lo, double hi, int panels, int m) {
  if (panels < 1) throw InputError("panel_rule: need at least one panel");
  if (!(hi > lo)) throw InputError("panel_rule: empty interval");
  const Rule1D base = gauss_legendre(m);
  Rule1D rule;
  rule.kind = RuleKind::gauss_legendre_panels;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * h;
    for (int i = 0; i < m; ++i) {
      rule.nodes.push_back(a + 0.5 * h * (base.nodes[i] + 1.0));
      rule.weights.push_back(0.5 * h * base.weights[i]);
    }
  }
  rule.scaled_weights = rule.weights;
  return rule;
}

RadialSizes RadialSizes::doubled() const { return scaled(2); }

RadialSizes RadialSizes::scaled(int f) const {
  return {panels * f, nodes * f, levels * f, theta * f, phi * f};
}

Rule1D radial_rule(double gamma, double radius, const RadialSizes& sizes, bool truncate_origin) {
  if (!(radius > 0.0)) throw InputError("radial_rule: radius must be positive");
  if (!truncate_origin && !(gamma > -1.0)) {
    throw InputError("radial_rule: r^gamma is not integrable at the origin for gamma <= -1");
  }
  Rule1D rule;
  rule.kind = RuleKind::gauss_legendre_panels;
  const double r0 = std::min(1.0, radius);
  const double inner = std::ldexp(r0, -sizes.levels);
  const Rule1D gl = gauss_legendre(sizes.nodes);

  auto add_panel = [&](double a, double b) {
    const double h = b - a;
    for (int i = 0; i < sizes.nodes; ++i) {
      const double r = a + 0.5 * h * (gl.nodes[i] + 1.0);
      rule.nodes.push_back(r);
      rule.weights.push_back(0.5 * h * gl.weights[i] * std::pow(r, gamma));
    }
  };

  if (!truncate_origin) {
    // int_0^inner F(r) r^gamma dr with r = inner (1+x)/2.
    const Rule1D gj = gauss_jacobi(sizes.nodes, 0.0, gamma);
    const double scale = std::pow(0.5 * inner, gamma + 1.0);
    for (int i = 0; i < sizes.nodes; ++i) {
      rule.nodes.push_back(0.5 * inner * (gj.nodes[i] + 1.0));
      rule.weights.push_back(scale * gj.weights[i]);
    }
  }
  for (int j = sizes.levels - 1; j >= 0; --j) add_panel(std::ldexp(r0, -j - 1), std::ldexp(r0, -j));
  if (radius > r0) {
    const double h = (radius - r0) / sizes.panels;
    for (int p = 0; p < sizes.panels; ++p) add_panel(r0 + p * h, r0 + (p + 1) * h);
  }
  rule.scaled_weights = rule.weights;
  return rule;
}

double integrate_radial_3d(const std::function<double(double, double, double)>& f, double delta,
                           double radius, const RadialSizes& sizes) {
  require_delta(delta, 1.0, true, "integrate_radial_3d");
  const Rule1D radial = radial_rule(2.0 - 2.0 * delta, radius, sizes);
  const Rule1D z = gauss_legendre(sizes.theta);
  double total = 0.0;
  for (int i = 0; i < sizes.theta; ++i) {
    const double s = std::sqrt(std::max(0.0, 1.0 - z.nodes[i] * z.nodes[i]));
    for (int j = 0; j < sizes.phi; ++j) {
      const double phi = kTwoPi * j / sizes.phi;
      const double wx = s * std::cos(phi);
      const double wy = s * std::sin(phi);
      double line = 0.0;
      for (std::size_t q = 0; q < radial.size(); ++q) {
        const double r = radial.nodes[q];
        line += radial.weights[q] * f(r * wx, r * wy, r * z.nodes[i]);
      }
      total += z.weights[i] * (kTwoPi / sizes.phi) * line;
    }
  }
  return total;
}

namespace {

double polar_sum(const std::function<double(double, double)>& f, const Rule1D& radial, int phi_n) {
  double total = 0.0;
  for (int j = 0; j < phi_n; ++j) {
    const double phi = kTwoPi * j / phi_n;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    double line = 0.0;
    for (std::size_t q = 0; q < radial.size(); ++q) {
      line += radial.weights[q] * f(radial.nodes[q] * c, radial.nodes[q] * s);
    }
    total += (kTwoPi / phi_n) * line;
  }
  return total;
}

}  // namespace

double integrate_cyl_2d(const std::function<double(double, double)>& f, double delta,
                        double radius, const RadialSizes& sizes) {
  require_delta(delta, 1.0, false, "integrate_cyl_2d");
  return polar_sum(f, radial_rule(1.0 - 2.0 * delta, radius, sizes), sizes.phi);
}

double integrate_cyl_2d_truncated(const std::function<double(double, double)>& f, double delta,
                                  double radius, const RadialSizes& sizes) {
  return polar_sum(f, radial_rule(1.0 - 2.0 * delta, radius, sizes, true), sizes.phi);
}

double default_radius(int k_max, int n) { return std::sqrt(2.0 * k_max + n) + 10.0; }

std::span<const double> PointRule::axis(int d) const {
  return std::span<const double>(coords).subspan(static_cast<std::size_t>(d) * size(), size());
}

PointRule tensor(const PointRule& a, const PointRule& b) {
  PointRule out;
  out.kind = a.kind;
  out.dim = a.dim + b.dim;
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  const std::size_t n = na * nb;
  out.weights.resize(n);
  out.coords.resize(static_cast<std::size_t>(out.dim) * n);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      const std::size_t q = i * nb + j;
      out.weights[q] = a.weights[i] * b.weights[j];
      for (int d = 0; d < a.dim; ++d) out.coords[d * n + q] = a.coords[d * na + i];
      for (int d = 0; d < b.dim; ++d) out.coords[(a.dim + d) * n + q] = b.coords[d * nb + j];
    }
  }
  return out;
}

PointRule gauss_hermite_tensor(int n, int m, double envelope_scale) {
  if (n < 0) throw InputError("gauss_hermite_tensor: negative dimension");
  if (!(envelope_scale > 0.0)) throw InputError("gauss_hermite_tensor: scale must be positive");
  const Rule1D gh = gauss_hermite(m);
  PointRule one;
  one.kind = RuleKind::gauss_hermite;
  one.dim = 1;
  for (int i = 0; i < m; ++i) {
    one.coords.push_back(gh.nodes[i] / envelope_scale);
    one.weights.push_back(gh.scaled_weights[i] / envelope_scale);
  }
  PointRule out;
  out.kind = RuleKind::gauss_hermite;
  out.dim = 0;
  out.weights = {1.0};
  for (int d = 0; d < n; ++d) out = tensor(out, one);
  return out;
}

PointRule spherical_product(int d, std::span<const double> radial_nodes,
                            std::span<const double> radial_weights, int degree, int scale) {
  if (d < 1 || d > 3) throw CapabilityError("spherical_product: 1-3 dimensions only");
  if (degree < 0 || scale < 1) throw InputError("spherical_product: bad degree/scale");
  if (radial_nodes.size() != radial_weights.size()) throw InputError("spherical_product: size mismatch");
  // Directions on S^{d-1}, stored d-major: dirs[c * count + j].
  std::vector<double> dirs;
  std::vector<double> dir_w;
  if (d == 1) {
    dirs = {1.0, -1.0};
    dir_w = {1.0, 1.0};
  } else if (d == 2) {
    const int nphi = scale * (2 * degree + 2);
    dirs.resize(2 * nphi);
    for (int j = 0; j < nphi; ++j) {
      const double phi = kTwoPi * j / nphi;
      dirs[j] = std::cos(phi);
      dirs[nphi + j] = std::sin(phi);
      dir_w.push_back(kTwoPi / nphi);
    }
  } else {
    const Rule1D z = gauss_legendre(scale * (degree + 2));
    const int nphi = scale * (2 * degree + 2);
    const std::size_t count = z.size() * nphi;
    dirs.resize(3 * count);
    std::size_t q = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double s = std::sqrt(std::max(0.0, 1.0 - z.nodes[i] * z.nodes[i]));
      for (int j = 0; j < nphi; ++j, ++q) {
        const double phi = kTwoPi * j / nphi;
        dirs[q] = s * std::cos(phi);
        dirs[count + q] = s * std::sin(phi);
        dirs[2 * count + q] = z.nodes[i];
        dir_w.push_back(z.weights[i] * kTwoPi / nphi);
      }
    }
  }

  const std::size_t nd = dir_w.size();
  const std::size_t nr = radial_nodes.size();
  PointRule out;
  out.kind = d == 3 ? RuleKind::radial_spherical_3d : RuleKind::radial_polar_2d;
  out.dim = d;
  out.weights.resize(nr * nd);
  out.coords.resize(static_cast<std::size_t>(d) * nr * nd);
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nd; ++j) {
      const std::size_t q = i * nd + j;
      out.weights[q] = radial_weights[i] * dir_w[j];
      for (int c = 0; c < d; ++c) out.coords[c * nr * nd + q] = radial_nodes[i] * dirs[c * nd + j];
    }
  }
  return out;
}

PointRule gaussian_singular_rule(int d, double delta, int degree, int scale,
                                 bool vanishing_at_origin) {
  if (d < 1 || d > 3) throw CapabilityError("gaussian_singular_rule: weighted block must be 1-3D");
  if (degree < 0 || scale < 1) throw InputError("gaussian_singular_rule: bad degree/scale");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw InputError("gaussian_singular_rule: bad delta");
  double alpha = 0.5 * d - 1.0 - delta;
  int poly_degree = degree;
  if (vanishing_at_origin) {
    alpha += 1.0;
    poly_degree = std::max(degree - 1, 0);
  }
  if (!(alpha > -1.0)) {
    throw InputError("gaussian_singular_rule: |x|^{-2 delta} not integrable for this block");
  }
  const Rule1D lag = gauss_laguerre(scale * (poly_degree / 2 + 2), alpha);

  std::vector<double> radial_nodes(lag.size());
  std::vector<double> radial_weights(lag.size());
  for (std::size_t i = 0; i < lag.size(); ++i) {
    radial_nodes[i] = std::sqrt(lag.nodes[i]);
    radial_weights[i] = 0.5 * lag.scaled_weights[i];
    if (vanishing_at_origin) radial_weights[i] /= lag.nodes[i];
  }
  PointRule out = spherical_product(d, radial_nodes, radial_weights, degree, scale);
  if (d == 1) out.kind = RuleKind::gaussian_envelope;
  return out;
}

}  // namespace hk::quad
