#include "simd/kernels_impl.hpp"

namespace hk::simd::detail {

void hermite_table_scalar(const double* x, std::size_t count, int kmax, double* out,
                          std::size_t stride) {
  for (std::size_t p = 0; p < count; ++p) {
    const double t = x[p];
    double hprev = seed0(t);
    out[p] = hprev;
    if (kmax < 1) continue;
    double h = seed1(t, hprev);
    out[stride + p] = h;
    for (int k = 1; k < kmax; ++k) {
      const double next = step(t, up_coef(k), down_coef(k), h, hprev);
      hprev = h;
      h = next;
      out[static_cast<std::size_t>(k + 1) * stride + p] = h;
    }
  }
}

// Four interleaved partial sums combined as (s0 + s1) + (s2 + s3), then the
// tail in order.  The vector variants reproduce exactly this grouping.
double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int l = 0; l < 4; ++l) s[l] += a[i + l] * b[i + l];
  }
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void multiply_scalar(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace hk::simd::detail
