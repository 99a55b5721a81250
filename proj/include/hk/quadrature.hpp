#pragma once
// Deterministic quadrature: Gauss rules on the line and half line, composite
// Gauss-Legendre panels, radial rules with a power-law weight folded into the
// weights, and tensor rules in up to a handful of dimensions.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace hk::quad {

enum class RuleKind {
  gauss_legendre,
  gauss_hermite,
  gauss_laguerre,
  gauss_jacobi,
  gauss_legendre_panels,
  radial_polar_2d,
  radial_spherical_3d,
  gaussian_envelope,
};

/// One-dimensional rule.  `weights` integrate against the rule's weight
/// function; `scaled_weights` are the same weights divided by the squared
/// envelope (e^{-x^2} for Hermite, e^{-u} for Laguerre, 1 otherwise), so a
/// caller holding an already-decaying integrand g can form sum scaled_w * g.
struct Rule1D {
  RuleKind kind = RuleKind::gauss_legendre;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;

  std::size_t size() const { return nodes.size(); }
  double integrate(const std::function<double(double)>& f) const;
};

/// Gauss-Legendre on [-1, 1].
Rule1D gauss_legendre(int m);
/// Gauss-Hermite for weight e^{-x^2} on the line.
Rule1D gauss_hermite(int m);
/// Generalized Gauss-Laguerre for weight u^alpha e^{-u} on [0, inf), alpha > -1.
Rule1D gauss_laguerre(int m, double alpha);
/// Gauss-Jacobi for weight (1-x)^a (1+x)^b on [-1, 1], a, b > -1.
Rule1D gauss_jacobi(int m, double a, double b);
/// Composite Gauss-Legendre: `panels` equal panels on [lo, hi], m nodes each.
Rule1D panel_rule(double lo, double hi, int panels, int m);

/// Sizes for the panelized radial / angular rules.  doubled() doubles every
/// count, which is what the doubling gate compares against.
struct RadialSizes {
  int panels = 400;  // uniform panels on [r0, R]
  int nodes = 16;    // Gauss nodes per panel
  int levels = 24;   // geometric panels [r0 2^{-j-1}, r0 2^{-j}] toward the origin
  int theta = 64;    // Gauss-Legendre nodes in cos(theta)
  int phi = 64;      // trapezoid nodes in phi

  RadialSizes doubled() const;
  RadialSizes scaled(int factor) const;
};

/// Rule for int_0^R F(r) r^gamma dr with r^gamma absorbed into the weights.
/// The innermost panel uses Gauss-Jacobi so integrable singularities
/// (gamma > -1) cost nothing extra.  With truncate_origin the innermost panel
/// [0, r0 2^{-levels}] is dropped, which is the only way to evaluate a
/// non-integrable weight (used to demonstrate divergence).
Rule1D radial_rule(double gamma, double radius, const RadialSizes& sizes,
                   bool truncate_origin = false);

/// int_{R^3} F(x) / |x|^{2 delta} dx over the ball of radius R, delta in [0, 1].
double integrate_radial_3d(const std::function<double(double, double, double)>& f, double delta,
                           double radius, const RadialSizes& sizes = {});

/// int_{R^2} F(x) / |x|^{2 delta} dx over the disc of radius R, delta in [0, 1).
double integrate_cyl_2d(const std::function<double(double, double)>& f, double delta,
                        double radius, const RadialSizes& sizes = {});

/// Same as integrate_cyl_2d but without the admissibility check and with the
/// origin panel removed; the result grows without bound as sizes double when
/// delta = 1.
double integrate_cyl_2d_truncated(const std::function<double(double, double)>& f, double delta,
                                  double radius, const RadialSizes& sizes);

/// Default truncation radius sqrt(2 k_max + n) + 10.
double default_radius(int k_max, int n);

/// Nodes and weights in `dim` dimensions.  coords is axis-major:
/// coordinate d of node q is coords[d * size() + q].
struct PointRule {
  RuleKind kind = RuleKind::gaussian_envelope;
  int dim = 0;
  std::vector<double> coords;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
  std::span<const double> axis(int d) const;
};

/// Product rule; axes of `a` come first.
PointRule tensor(const PointRule& a, const PointRule& b);

/// Tensor Gauss-Hermite with scaled weights in n dimensions, for integrands
/// carrying an e^{-s^2 |x|^2} envelope (s = envelope_scale).
PointRule gauss_hermite_tensor(int n, int m, double envelope_scale = 1.0);

/// Product of a radial rule (weights already carrying r^{d-1} and any radial
/// weight) with directions on S^{d-1}: the two points +-1 for d = 1, a
/// trapezoid rule in phi for d = 2, Gauss-Legendre in cos(theta) x trapezoid
/// for d = 3.  Exact on the sphere for polynomials of degree <= 2 * degree + 1.
PointRule spherical_product(int d, std::span<const double> radial_nodes,
                            std::span<const double> radial_weights, int degree, int scale);

/// Rule in d = 1, 2, 3 dimensions for int_{R^d} G(x) |x|^{-2 delta} dx where
/// G = e^{-|x|^2} P(x) and deg P <= 2 * degree.  Radial part is generalized
/// Gauss-Laguerre in u = r^2, angular part trapezoid (d = 2) or
/// Gauss-Legendre x trapezoid (d = 3); exact for that class at scale >= 1.
/// vanishing_at_origin declares P = |x|^2 Q (only meaningful for d = 1),
/// which extends the admissible range of delta.
PointRule gaussian_singular_rule(int d, double delta, int degree, int scale,
                                 bool vanishing_at_origin = false);

}  // namespace hk::quad
