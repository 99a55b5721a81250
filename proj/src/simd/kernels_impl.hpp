#pragma once
// Per-ISA kernel entry points and the arithmetic every variant must share.

#include <cmath>
#include <cstddef>
#include <numbers>

#include "hk/simd.hpp"

namespace hk::simd::detail {

// pi^{-1/4}
inline constexpr double kPiQuarterInv = 0.75112554446494248285870300477622;

// Seeds and coefficients of the normalized recurrence
//   h_{k+1}(t) = t * sqrt(2/(k+1)) * h_k(t) - sqrt(k/(k+1)) * h_{k-1}(t).
// hermite.cpp uses the same helpers so eval_h and the batched kernels agree
// to the last bit.
inline double seed0(double t) { return kPiQuarterInv * std::exp(-0.5 * t * t); }
inline double seed1(double t, double h0) { return (std::numbers::sqrt2 * t) * h0; }
inline double up_coef(int k) { return std::sqrt(2.0 / static_cast<double>(k + 1)); }
inline double down_coef(int k) {
  return std::sqrt(static_cast<double>(k) / static_cast<double>(k + 1));
}
inline double step(double t, double a, double b, double h, double hprev) {
  return t * a * h - b * hprev;
}

void hermite_table_scalar(const double* x, std::size_t count, int kmax, double* out,
                          std::size_t stride);
double dot_scalar(const double* a, const double* b, std::size_t n);
void axpy_scalar(double alpha, const double* x, double* y, std::size_t n);
void multiply_scalar(const double* a, const double* b, double* out, std::size_t n);

#if defined(HK_HAVE_AVX2)
void hermite_table_avx2(const double* x, std::size_t count, int kmax, double* out,
                        std::size_t stride);
double dot_avx2(const double* a, const double* b, std::size_t n);
void axpy_avx2(double alpha, const double* x, double* y, std::size_t n);
void multiply_avx2(const double* a, const double* b, double* out, std::size_t n);
#endif

#if defined(HK_HAVE_NEON)
void hermite_table_neon(const double* x, std::size_t count, int kmax, double* out,
                        std::size_t stride);
double dot_neon(const double* a, const double* b, std::size_t n);
void axpy_neon(double alpha, const double* x, double* y, std::size_t n);
void multiply_neon(const double* a, const double* b, double* out, std::size_t n);
#endif

}  // namespace hk::simd::detail
