#include <immintrin.h>

#include "simd/kernels_impl.hpp"

namespace hk::simd::detail {

// Four points per register.  Seeds need exp(), which has no AVX2 instruction,
// so they are computed lane by lane with the scalar helpers and loaded.
void hermite_table_avx2(const double* x, std::size_t count, int kmax, double* out,
                        std::size_t stride) {
  std::size_t p = 0;
  alignas(32) double s0[4];
  alignas(32) double s1[4];
  for (; p + 4 <= count; p += 4) {
    for (int l = 0; l < 4; ++l) {
      s0[l] = seed0(x[p + l]);
      s1[l] = seed1(x[p + l], s0[l]);
    }
    const __m256d t = _mm256_loadu_pd(x + p);
    __m256d hprev = _mm256_load_pd(s0);
    _mm256_storeu_pd(out + p, hprev);
    if (kmax < 1) continue;
    __m256d h = _mm256_load_pd(s1);
    _mm256_storeu_pd(out + stride + p, h);
    for (int k = 1; k < kmax; ++k) {
      const __m256d a = _mm256_set1_pd(up_coef(k));
      const __m256d b = _mm256_set1_pd(down_coef(k));
      const __m256d next =
          _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(t, a), h), _mm256_mul_pd(b, hprev));
      hprev = h;
      h = next;
      _mm256_storeu_pd(out + static_cast<std::size_t>(k + 1) * stride + p, h);
    }
  }
  if (p < count) hermite_table_scalar(x + p, count - p, kmax, out + p, stride);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  double total = (s[0] + s[1]) + (s[2] + s[3]);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void multiply_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace hk::simd::detail
