#pragma once
// Data-parallel inner loops shared by the quadrature and spectral code.
//
// Every kernel has a scalar reference implementation and optional AVX2 / NEON
// variants.  The variant is chosen once at runtime from the CPU features (or
// forced via select() / the HK_ISA environment variable).  All variants are
// required to produce bit-identical results to the scalar reference: the
// reductions use a fixed 4-lane blocking that the scalar code reproduces, and
// the build disables floating-point contraction.

#include <cstddef>
#include <span>
#include <string_view>

namespace hk::simd {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  Isa isa;
  // out[j * stride + p] = h_j(x[p]) for 0 <= j <= kmax, 0 <= p < count.
  void (*hermite_table)(const double* x, std::size_t count, int kmax, double* out,
                        std::size_t stride);
  // Sum of a[i] * b[i] accumulated in four interleaved lanes.
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  // out[i] = a[i] * b[i]   (out may alias a or b)
  void (*multiply)(const double* a, const double* b, double* out, std::size_t n);
};

std::string_view name(Isa isa);
bool supported(Isa isa);

/// Kernel table for a specific ISA; throws CapabilityError if the CPU or the
/// build lacks it.
const KernelTable& table_for(Isa isa);

/// The table in use.  First call picks the best supported ISA unless HK_ISA
/// names one explicitly.
const KernelTable& active();

/// Override the automatic choice (tests, benchmarking).
void select(Isa isa);

// Span conveniences over active().

inline void hermite_table(std::span<const double> x, int kmax, std::span<double> out) {
  active().hermite_table(x.data(), x.size(), kmax, out.data(), x.size());
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active().axpy(alpha, x.data(), y.data(), y.size());
}

inline void multiply(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  active().multiply(a.data(), b.data(), out.data(), out.size());
}

}  // namespace hk::simd
