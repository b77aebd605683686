// Compiled with -mavx2; only reached after a runtime CPU check.

#include "kernel_body.hpp"

#include <immintrin.h>

namespace gl2::kernels::detail {

namespace {

struct Avx2Lane {
  __m256d v;

  Avx2Lane() = default;
  Avx2Lane(double c) : v(_mm256_set1_pd(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Avx2Lane(__m256d x) : v(x) {}

  friend Avx2Lane operator+(Avx2Lane a, Avx2Lane b) { return Avx2Lane(_mm256_add_pd(a.v, b.v)); }
  friend Avx2Lane operator-(Avx2Lane a, Avx2Lane b) { return Avx2Lane(_mm256_sub_pd(a.v, b.v)); }
  friend Avx2Lane operator*(Avx2Lane a, Avx2Lane b) { return Avx2Lane(_mm256_mul_pd(a.v, b.v)); }
  friend Avx2Lane operator*(double s, Avx2Lane a) {
    return Avx2Lane(_mm256_mul_pd(_mm256_set1_pd(s), a.v));
  }
  // Sign flip, so -0.0 matches the scalar path bit for bit.
  friend Avx2Lane operator-(Avx2Lane a) { return Avx2Lane(_mm256_xor_pd(a.v, _mm256_set1_pd(-0.0))); }
};

struct Avx2Io {
  using Lane = Avx2Lane;
  static constexpr std::size_t width = 4;
  static Lane load(const double* p) { return Lane(_mm256_loadu_pd(p)); }
  static void store(double* p, Lane x) { _mm256_storeu_pd(p, x.v); }
};

}  // namespace

std::size_t residuals_avx2(const JetBatch& jets, ResidualBatch& out) {
  const std::size_t whole = jets.size - jets.size % Avx2Io::width;
  residual_span<Avx2Io>(jets, out, 0, whole);
  return whole;
}

std::size_t commutator_avx2(const JetBatch& jets, CommutatorBatch& out) {
  const std::size_t whole = jets.size - jets.size % Avx2Io::width;
  commutator_span<Avx2Io>(jets, out, 0, whole);
  return whole;
}

}  // namespace gl2::kernels::detail
