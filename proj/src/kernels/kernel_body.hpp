#pragma once

// Loop bodies shared by every backend. `Io` supplies the lane type, its
// width, and unaligned load/store of `width` consecutive doubles.

#include "gl2/kernels/batch.hpp"
#include "gl2/kernels/formulas.hpp"

namespace gl2::kernels::detail {

template <class Io>
void residual_span(const JetBatch& b, ResidualBatch& out, std::size_t begin, std::size_t end) {
  using Lane = typename Io::Lane;
  for (std::size_t i = begin; i < end; i += Io::width) {
    Quad<Lane> v;
    Grad4<Lane> g;
    for (int k = 0; k < 4; ++k) {
      v[k] = Io::load(&b.value[k][i]);
      for (int d = 0; d < 4; ++d) g[k][d] = Io::load(&b.grad[k][d][i]);
    }
    const Quad<Lane> r = residual_formula(v, g);
    for (int m = 0; m < 4; ++m) Io::store(&out.r[m][i], r[m]);
  }
}

template <class Io>
void commutator_span(const JetBatch& b, CommutatorBatch& out, std::size_t begin, std::size_t end) {
  using Lane = typename Io::Lane;
  for (std::size_t i = begin; i < end; i += Io::width) {
    Quad<Lane> v;
    Grad4<Lane> g;
    Hess4<Lane> h;
    for (int k = 0; k < 4; ++k) {
      v[k] = Io::load(&b.value[k][i]);
      for (int d = 0; d < 4; ++d) g[k][d] = Io::load(&b.grad[k][d][i]);
      for (int s = 0; s < 10; ++s) h[k][s] = Io::load(&b.hess[k][s][i]);
    }
    const CommutatorCoeffs<Lane> c = commutator_formula(v, g, h);
    for (int k = 0; k < 5; ++k)
      for (int p = 0; p < 7; ++p) Io::store(&out.coeff[k][p][i], c[k][p]);
  }
}

}  // namespace gl2::kernels::detail
