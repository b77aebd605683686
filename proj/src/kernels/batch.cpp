#include "gl2/kernels/batch.hpp"

#include "gl2/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gl2::kernels {

bool avx2_available() noexcept {
#if defined(GL2_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Backend best_backend() noexcept { return avx2_available() ? Backend::kAvx2 : Backend::kScalar; }

std::string to_string(Backend b) { return b == Backend::kAvx2 ? "avx2" : "scalar"; }

Backend parse_backend(const std::string& name) {
  if (name == "auto") return best_backend();
  if (name == "scalar") return Backend::kScalar;
  if (name == "avx2") {
    if (!avx2_available()) throw UsageError("avx2 backend requested but not available on this CPU");
    return Backend::kAvx2;
  }
  throw UsageError("unknown backend '" + name + "' (scalar, avx2, auto)");
}

JetBatch JetBatch::from_jets(std::span<const jets::FieldJet> jets) {
  JetBatch b;
  b.size = jets.size();
  for (int k = 0; k < 4; ++k) {
    b.value[k].resize(b.size);
    for (auto& g : b.grad[k]) g.resize(b.size);
    for (auto& h : b.hess[k]) h.resize(b.size);
  }
  for (std::size_t i = 0; i < b.size; ++i)
    for (int k = 0; k < 4; ++k) {
      const jets::Jet2Scalar& s = jets[i].f[static_cast<std::size_t>(k)];
      b.value[k][i] = s.value;
      for (int d = 0; d < 4; ++d) b.grad[k][d][i] = s.grad[static_cast<std::size_t>(d)];
      for (int u = 0; u < 10; ++u) b.hess[k][u][i] = s.hess.upper()[static_cast<std::size_t>(u)];
    }
  return b;
}

double CommutatorBatch::max_abs(std::size_t i) const {
  double m = 0.0;
  for (const auto& comp : coeff)
    for (const auto& power : comp) m = std::max(m, std::abs(power[i]));
  return m;
}

ResidualBatch residuals_batch(const JetBatch& jets, Backend backend) {
  ResidualBatch out;
  for (auto& r : out.r) r.resize(jets.size);
  std::size_t done = 0;
#if defined(GL2_HAVE_AVX2_KERNELS)
  if (backend == Backend::kAvx2) {
    if (!avx2_available()) throw UsageError("avx2 backend not available");
    done = detail::residuals_avx2(jets, out);
  }
#else
  if (backend == Backend::kAvx2) throw UsageError("avx2 kernels not compiled in");
#endif
  detail::residuals_scalar(jets, out, done, jets.size);
  return out;
}

CommutatorBatch commutator_batch(const JetBatch& jets, Backend backend) {
  CommutatorBatch out;
  for (auto& comp : out.coeff)
    for (auto& power : comp) power.resize(jets.size);
  std::size_t done = 0;
#if defined(GL2_HAVE_AVX2_KERNELS)
  if (backend == Backend::kAvx2) {
    if (!avx2_available()) throw UsageError("avx2 backend not available");
    done = detail::commutator_avx2(jets, out);
  }
#else
  if (backend == Backend::kAvx2) throw UsageError("avx2 kernels not compiled in");
#endif
  detail::commutator_scalar(jets, out, done, jets.size);
  return out;
}

}  // namespace gl2::kernels
