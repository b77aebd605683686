#include "kernel_body.hpp"

namespace gl2::kernels::detail {

namespace {

struct ScalarIo {
  using Lane = double;
  static constexpr std::size_t width = 1;
  static double load(const double* p) { return *p; }
  static void store(double* p, double v) { *p = v; }
};

}  // namespace

void residuals_scalar(const JetBatch& jets, ResidualBatch& out, std::size_t begin, std::size_t end) {
  residual_span<ScalarIo>(jets, out, begin, end);
}

void commutator_scalar(const JetBatch& jets, CommutatorBatch& out, std::size_t begin,
                       std::size_t end) {
  commutator_span<ScalarIo>(jets, out, begin, end);
}

}  // namespace gl2::kernels::detail
