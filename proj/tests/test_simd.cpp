#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "hk/hermite.hpp"
#include "hk/simd.hpp"

using namespace hk;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<double> random_vec(std::mt19937_64& g, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(g);
  return v;
}

std::vector<simd::Isa> vector_isas() {
  std::vector<simd::Isa> out;
  for (auto isa : {simd::Isa::avx2, simd::Isa::neon}) {
    if (simd::supported(isa)) out.push_back(isa);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(simd::supported(simd::Isa::scalar));
  CHECK(simd::table_for(simd::Isa::scalar).isa == simd::Isa::scalar);
  CHECK(simd::name(simd::Isa::scalar) == "scalar");
}

TEST_CASE("unsupported ISA is reported, not silently replaced") {
  for (auto isa : {simd::Isa::avx2, simd::Isa::neon}) {
    if (!simd::supported(isa)) CHECK_THROWS(simd::table_for(isa));
  }
}

TEST_CASE("vector kernels are bit-identical to the scalar reference") {
  const auto& ref = simd::table_for(simd::Isa::scalar);
  std::mt19937_64 g(1234);
  for (auto isa : vector_isas()) {
    CAPTURE(simd::name(isa));
    const auto& vec = simd::table_for(isa);
    for (std::size_t n = 0; n <= 67; ++n) {
      const auto a = random_vec(g, n, -3.0, 3.0);
      const auto b = random_vec(g, n, -3.0, 3.0);
      const double d0 = ref.dot(a.data(), b.data(), n);
      const double d1 = vec.dot(a.data(), b.data(), n);
      CHECK(std::memcmp(&d0, &d1, sizeof d0) == 0);

      auto y0 = random_vec(g, n, -1.0, 1.0);
      auto y1 = y0;
      ref.axpy(0.37, a.data(), y0.data(), n);
      vec.axpy(0.37, a.data(), y1.data(), n);
      CHECK(same_bits(y0, y1));

      std::vector<double> m0(n), m1(n);
      ref.multiply(a.data(), b.data(), m0.data(), n);
      vec.multiply(a.data(), b.data(), m1.data(), n);
      CHECK(same_bits(m0, m1));
      // aliasing out == a
      auto al0 = a, al1 = a;
      ref.multiply(al0.data(), b.data(), al0.data(), n);
      vec.multiply(al1.data(), b.data(), al1.data(), n);
      CHECK(same_bits(al0, al1));
    }
    for (std::size_t count : {1u, 3u, 4u, 5u, 17u, 64u, 131u}) {
      for (int kmax : {0, 1, 2, 40, 300}) {
        const auto x = random_vec(g, count, -25.0, 25.0);
        const std::size_t stride = count + 3;
        std::vector<double> t0((kmax + 1) * stride, -7.0), t1 = t0;
        ref.hermite_table(x.data(), count, kmax, t0.data(), stride);
        vec.hermite_table(x.data(), count, kmax, t1.data(), stride);
        CHECK(same_bits(t0, t1));
      }
    }
  }
}

TEST_CASE("hermite_table rows agree with eval_h bit for bit") {
  const HermiteBasis& b = HermiteBasis::shared();
  const std::vector<double> x = {-12.0, -1.0, 0.0, 0.3, 2.5, 9.0, 31.0};
  for (auto isa : {simd::Isa::scalar, simd::Isa::avx2, simd::Isa::neon}) {
    if (!simd::supported(isa)) continue;
    const auto& t = simd::table_for(isa);
    const int kmax = 120;
    std::vector<double> out((kmax + 1) * x.size());
    t.hermite_table(x.data(), x.size(), kmax, out.data(), x.size());
    for (int k = 0; k <= kmax; ++k) {
      for (std::size_t p = 0; p < x.size(); ++p) CHECK(out[k * x.size() + p] == eval_h(b, k, x[p]));
    }
  }
}

TEST_CASE("select switches the active table") {
  const simd::Isa before = simd::active().isa;
  simd::select(simd::Isa::scalar);
  CHECK(simd::active().isa == simd::Isa::scalar);
  simd::select(before);
  CHECK(simd::active().isa == before);
}
