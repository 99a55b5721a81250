#include <atomic>
#include <cstdlib>
#include <string>

#include "hk/errors.hpp"
#include "simd/kernels_impl.hpp"

namespace hk::simd {
namespace {

constexpr KernelTable kScalar{Isa::scalar, detail::hermite_table_scalar, detail::dot_scalar,
                              detail::axpy_scalar, detail::multiply_scalar};
#if defined(HK_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::avx2, detail::hermite_table_avx2, detail::dot_avx2,
                            detail::axpy_avx2, detail::multiply_avx2};
#endif
#if defined(HK_HAVE_NEON)
constexpr KernelTable kNeon{Isa::neon, detail::hermite_table_neon, detail::dot_neon,
                            detail::axpy_neon, detail::multiply_neon};
#endif

std::atomic<const KernelTable*> g_active{nullptr};

const KernelTable* pick_default() {
  if (const char* env = std::getenv("HK_ISA")) {
    const std::string want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == name(isa) && supported(isa)) return &table_for(isa);
    }
  }
  if (supported(Isa::avx2)) return &table_for(Isa::avx2);
  if (supported(Isa::neon)) return &table_for(Isa::neon);
  return &kScalar;
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(HK_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(HK_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table_for(Isa isa) {
  if (!supported(isa)) {
    throw CapabilityError("kernel ISA not available: " + std::string(name(isa)));
  }
  switch (isa) {
#if defined(HK_HAVE_AVX2)
    case Isa::avx2: return kAvx2;
#endif
#if defined(HK_HAVE_NEON)
    case Isa::neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() {
  const KernelTable* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    const KernelTable* chosen = pick_default();
    const KernelTable* expected = nullptr;
    g_active.compare_exchange_strong(expected, chosen, std::memory_order_acq_rel);
    t = g_active.load(std::memory_order_acquire);
  }
  return *t;
}

void select(Isa isa) { g_active.store(&table_for(isa), std::memory_order_release); }

}  // namespace hk::simd
