#include "gl2/gl2_structures.hpp"

#include "gl2/errors.hpp"

#include <cmath>

namespace gl2::structures {

namespace {

// Homogeneous binary form of degree <= 3 as coefficients of x^(d-i) y^i.
using Form = std::array<double, 4>;

// (l0 x + l1 y)^m * (r0 x + r1 y)^k as coefficients of x^(3-i) y^i, m + k = 3.
Form power_product(double l0, double l1, int m, double r0, double r1, int k) {
  Form acc{1.0, 0.0, 0.0, 0.0};
  int deg = 0;
  auto mul = [&](double u, double v) {
    Form next{};
    for (int i = 0; i <= deg; ++i) {
      next[static_cast<std::size_t>(i)] += u * acc[static_cast<std::size_t>(i)];
      next[static_cast<std::size_t>(i + 1)] += v * acc[static_cast<std::size_t>(i)];
    }
    acc = next;
    ++deg;
  };
  for (int i = 0; i < m; ++i) mul(l0, l1);
  for (int i = 0; i < k; ++i) mul(r0, r1);
  return acc;
}

Mat4 unit(int r, int c) {
  Mat4 m = Mat4::Zero();
  m(r, c) = 1.0;
  return m;
}

std::vector<tensor::MatN> to_dynamic(const std::array<Mat4, 4>& b) {
  return {b[0], b[1], b[2], b[3]};
}

}  // namespace

Vec4 cone_point(double s, double t) {
  return {s * s * s, 3.0 * s * s * t, 3.0 * s * t * t, t * t * t};
}

std::array<double, 3> twisted_cubic_eval(double X, double Y, double Z, double W) {
  return {X * Z - Y * Y, Y * W - Z * Z, X * W - Y * Z};
}

std::array<double, 3> cone_equations(const Vec4& v) {
  return twisted_cubic_eval(v(0), v(1) / 3.0, v(2) / 3.0, v(3));
}

Mat4 sym3_action(const Mat2& g) {
  const Mat2 m = tensor::checked_inverse(g, "sym3_action");
  // Column i is the image of x^(3-i) y^i, i.e. (m00 x + m01 y)^(3-i) (m10 x + m11 y)^i.
  Mat4 out;
  for (int i = 0; i < 4; ++i) {
    const Form f = power_product(m(0, 0), m(0, 1), 3 - i, m(1, 0), m(1, 1), i);
    for (int r = 0; r < 4; ++r) out(r, i) = f[static_cast<std::size_t>(r)];
  }
  return out;
}

Mat4 sym3_differential(const Mat2& a) {
  // d/dt p((I - t a) v) at t = 0 is -(a v) . grad p. On x^(3-i) y^i:
  //   -(3-i) x^(2-i) y^i (a00 x + a01 y) - i x^(3-i) y^(i-1) (a10 x + a11 y).
  Mat4 out = Mat4::Zero();
  for (int i = 0; i < 4; ++i) {
    const double px = 3 - i;
    const double py = i;
    if (px > 0) {
      out(i, i) -= px * a(0, 0);
      if (i + 1 <= 3) out(i + 1, i) -= px * a(0, 1);
    }
    if (py > 0) {
      out(i - 1, i) -= py * a(1, 0);
      out(i, i) -= py * a(1, 1);
    }
  }
  return out;
}

std::array<Mat4, 4> gl2_lie_algebra_basis() {
  std::array<Mat4, 4> out;
  for (int k = 0; k < 4; ++k) {
    Mat2 e = Mat2::Zero();
    e(k / 2, k % 2) = 1.0;
    out[static_cast<std::size_t>(k)] = sym3_differential(e);
  }
  return out;
}

tensor::Subspace gl2_lie_algebra() { return tensor::Subspace(4, to_dynamic(gl2_lie_algebra_basis())); }

Mat4 H_matrix(double A, double B, double C, double D) {
  Mat4 h;
  h << 1, A, B, D,
       0, 1, A, C,
       0, 0, 1, A,
       0, 0, 0, 1;
  return h;
}

std::optional<Values4> h_parameters(const Mat4& m, double tol) {
  const double A = m(0, 1);
  const Mat4 ref = H_matrix(A, m(0, 2), m(1, 3), m(0, 3));
  if ((m - ref).cwiseAbs().maxCoeff() > tol) return std::nullopt;
  return Values4{A, m(0, 2), m(1, 3), m(0, 3)};
}

std::array<Mat4, 4> h_lie_algebra_basis() {
  return {unit(0, 1) + unit(1, 2) + unit(2, 3), unit(0, 2), unit(1, 3), unit(0, 3)};
}

tensor::Subspace h_lie_algebra() { return tensor::Subspace(4, to_dynamic(h_lie_algebra_basis())); }

Mat4 heisenberg_embed(double a, double b, double c) {
  Mat4 m;
  m << 1, a, 0.5 * a * a + b, a * a * a / 6.0 + a * b - c,
       0, 1, a, 0.5 * a * a,
       0, 0, 1, a,
       0, 0, 0, 1;
  return m;
}

HFromAlpha h_from_alpha(const FrameCoefficients& f) {
  const double a = f.alpha, b = f.beta, g = f.gamma, d = f.delta;
  HFromAlpha out;
  out.h << 1, -a, -b + a * a, -d + a * (g + b) - a * a * a,
           0, 1, -a, -g + a * a,
           0, 0, 1, -a,
           0, 0, 0, 1;
  out.abcd = h_parameters_from_alpha(a, b, g, d);
  return out;
}

Mat4 framing_from_alpha(const FrameCoefficients& f) {
  Mat4 v;
  v << 1, f.alpha, f.beta, f.delta,
       0, 1, f.alpha, f.gamma,
       0, 0, 1, f.alpha,
       0, 0, 0, 1;
  return v;
}

FkCoframe fk_coframe(const Values4& a, const Values4& b) {
  static constexpr std::array<double, 4> kBinom{1.0, 3.0, 3.0, 1.0};
  FkCoframe out;
  for (int j = 0; j < 4; ++j) {
    // prod_{k != j} (a_k + b_k y); coefficient of y^r sums the r-subsets.
    std::array<double, 4> poly{1.0, 0.0, 0.0, 0.0};
    int deg = 0;
    for (int k = 0; k < 4; ++k) {
      if (k == j) continue;
      std::array<double, 4> next{};
      for (int r = 0; r <= deg; ++r) {
        next[static_cast<std::size_t>(r)] += a[static_cast<std::size_t>(k)] * poly[static_cast<std::size_t>(r)];
        next[static_cast<std::size_t>(r + 1)] += b[static_cast<std::size_t>(k)] * poly[static_cast<std::size_t>(r)];
      }
      poly = next;
      ++deg;
    }
    for (int r = 0; r < 4; ++r) out.h(r, j) = poly[static_cast<std::size_t>(r)] / kBinom[static_cast<std::size_t>(r)];
  }
  out.rank = tensor::numerical_rank(out.h);
  out.rank_deficient = out.rank < 4;
  return out;
}

}  // namespace gl2::structures
