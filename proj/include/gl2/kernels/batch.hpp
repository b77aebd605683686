#pragma once

// Batched evaluation of the torsion residuals and the Lax commutator over many
// sample points. Jets are held structure-of-arrays so each backend streams
// contiguous lanes. The scalar backend is the reference; the AVX2 backend is
// selected at runtime when the CPU supports it and must agree with the
// scalar one to rounding.

#include "gl2/jet_fields.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace gl2::kernels {

enum class Backend { kScalar, kAvx2 };

/// True when the AVX2 kernels were compiled in and the CPU reports AVX2.
bool avx2_available() noexcept;
/// Fastest backend usable on this machine.
Backend best_backend() noexcept;
std::string to_string(Backend b);
/// "scalar", "avx2" or "auto"; throws UsageError otherwise or when avx2 is
/// requested but unavailable.
Backend parse_backend(const std::string& name);

struct JetBatch {
  std::size_t size = 0;
  std::array<std::vector<double>, 4> value;
  std::array<std::array<std::vector<double>, 4>, 4> grad;   // [field][direction]
  std::array<std::array<std::vector<double>, 10>, 4> hess;  // [field][upper slot]

  static JetBatch from_jets(std::span<const jets::FieldJet> jets);
};

struct ResidualBatch {
  std::array<std::vector<double>, 4> r;
};

/// [field][lambda power] coefficient arrays, 5 components x 7 powers.
struct CommutatorBatch {
  std::array<std::array<std::vector<double>, 7>, 5> coeff;

  /// max over components and powers of |coefficient| at point i.
  double max_abs(std::size_t i) const;
};

ResidualBatch residuals_batch(const JetBatch& jets, Backend backend);
CommutatorBatch commutator_batch(const JetBatch& jets, Backend backend);

namespace detail {
// Backend entry points; [begin, end) must be in range of the batch.
void residuals_scalar(const JetBatch& jets, ResidualBatch& out, std::size_t begin, std::size_t end);
void commutator_scalar(const JetBatch& jets, CommutatorBatch& out, std::size_t begin, std::size_t end);
#if defined(GL2_HAVE_AVX2_KERNELS)
/// Processes whole groups of four; returns the first index not handled.
std::size_t residuals_avx2(const JetBatch& jets, ResidualBatch& out);
std::size_t commutator_avx2(const JetBatch& jets, CommutatorBatch& out);
#endif
}  // namespace detail

}  // namespace gl2::kernels
