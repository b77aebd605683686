#pragma once

// Hand-rolled generators for the property tests. Each case gets its own
// seed, printed on failure, so a single case can be replayed.

#include "gl2/jet_fields.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <array>
#include <cstdint>
#include <random>

namespace gl2::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double real(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  std::array<double, 4> quad(double lo = -1.0, double hi = 1.0) {
    return {real(lo, hi), real(lo, hi), real(lo, hi), real(lo, hi)};
  }

  Eigen::MatrixXd matrix(int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = real();
    return m;
  }

  Eigen::Matrix2d gl2(double min_det = 0.1) {
    for (;;) {
      Eigen::Matrix2d g = matrix(2, 2);
      if (std::abs(g.determinant()) > min_det) return g;
    }
  }

  /// Arbitrary (not necessarily solving) 2-jet at a random point.
  jets::FieldJet jet() {
    jets::FieldJet j;
    j.base_point = quad();
    for (auto& f : j.f) {
      f.value = real();
      f.grad = quad();
      for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) f.hess.set(a, b, real());
    }
    return j;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

template <class Prop>
void for_all(int cases, Prop&& prop, std::uint64_t base = 0x5eedULL) {
  for (int i = 0; i < cases; ++i) {
    const std::uint64_t seed = base + static_cast<std::uint64_t>(i);
    INFO("case seed " << seed);
    Gen g(seed);
    prop(g);
  }
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace gl2::testing
