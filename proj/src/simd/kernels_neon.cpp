#include <arm_neon.h>

#include "simd/kernels_impl.hpp"

namespace hk::simd::detail {

// Two points per register; the dot product keeps two registers so that the
// four partial sums line up with the scalar lane assignment.
void hermite_table_neon(const double* x, std::size_t count, int kmax, double* out,
                        std::size_t stride) {
  std::size_t p = 0;
  double s0[2];
  double s1[2];
  for (; p + 2 <= count; p += 2) {
    for (int l = 0; l < 2; ++l) {
      s0[l] = seed0(x[p + l]);
      s1[l] = seed1(x[p + l], s0[l]);
    }
    const float64x2_t t = vld1q_f64(x + p);
    float64x2_t hprev = vld1q_f64(s0);
    vst1q_f64(out + p, hprev);
    if (kmax < 1) continue;
    float64x2_t h = vld1q_f64(s1);
    vst1q_f64(out + stride + p, h);
    for (int k = 1; k < kmax; ++k) {
      const float64x2_t a = vdupq_n_f64(up_coef(k));
      const float64x2_t b = vdupq_n_f64(down_coef(k));
      const float64x2_t next = vsubq_f64(vmulq_f64(vmulq_f64(t, a), h), vmulq_f64(b, hprev));
      hprev = h;
      h = next;
      vst1q_f64(out + static_cast<std::size_t>(k + 1) * stride + p, h);
    }
  }
  if (p < count) hermite_table_scalar(x + p, count - p, kmax, out + p, stride);
}

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double total = (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
                 (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void multiply_neon(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace hk::simd::detail
