#pragma once

// Pointwise formulas of the H-flat GL(2) system, written once over a generic
// arithmetic type T. T is `double` for the scalar reference path, a SIMD lane
// for the batch kernels, Dual<T> for spatial derivatives, and a truncated
// power series for the Taylor solver. Only +, -, unary -, T * T and
// double * T are used in residual_formula; the Lax formulas additionally
// construct T from a double.

#include <array>

namespace gl2::kernels {

template <class T>
using Quad = std::array<T, 4>;
/// grads[field][direction]
template <class T>
using Grad4 = std::array<Quad<T>, 4>;

/// Coordinate components of the framing dual to H(A,B,C,D) dx:
///   V0 = d0, V1 = d1 - A d0, V2 = d2 - A d1 - (B - A^2) d0,
///   V3 = d3 - A d2 - (C - A^2) d1 - (D - (C + B) A + A^3) d0.
/// Only the non-trivial components are returned: v1_0, v2_0, v2_1, v3_0, v3_1, v3_2.
template <class T>
struct FramingCoeffs {
  T v1_0, v2_0, v2_1, v3_0, v3_1, v3_2;
};

template <class T>
FramingCoeffs<T> framing_coeffs(const Quad<T>& v) {
  const T& A = v[0];
  const T& B = v[1];
  const T& C = v[2];
  const T& D = v[3];
  const T A2 = A * A;
  return {-A, -(B - A2), -A, -(D - (C + B) * A + A2 * A), -(C - A2), -A};
}

/// Directional derivatives V_j(f) for each field: out[field][j].
template <class T>
Grad4<T> frame_derivatives(const Quad<T>& v, const Grad4<T>& g) {
  const FramingCoeffs<T> fc = framing_coeffs(v);
  Grad4<T> out;
  for (int k = 0; k < 4; ++k) {
    const Quad<T>& d = g[k];
    out[k][0] = d[0];
    out[k][1] = d[1] + fc.v1_0 * d[0];
    out[k][2] = d[2] + fc.v2_1 * d[1] + fc.v2_0 * d[0];
    out[k][3] = d[3] + fc.v3_2 * d[2] + fc.v3_1 * d[1] + fc.v3_0 * d[0];
  }
  return out;
}

/// Left-hand sides of the four torsion equations in their standard order.
template <class T>
Quad<T> residual_formula(const Quad<T>& v, const Grad4<T>& g) {
  const T& A = v[0];
  const T& C = v[2];
  const Grad4<T> Vf = frame_derivatives(v, g);
  const Quad<T>& VA = Vf[0];
  const Quad<T>& VB = Vf[1];
  const Quad<T>& VC = Vf[2];
  const Quad<T>& VD = Vf[3];
  const T A2 = A * A;
  return {
      VD[2] - VB[3] - A * VB[2] - C * VA[2] + A * VA[3] + A2 * VA[2],
      2.0 * VD[1] - VC[2] - 2.0 * (A * VB[1]) - VA[3] + A * VA[2] + 2.0 * (A2 * VA[1]) -
          2.0 * (C * VA[1]),
      VD[0] - 2.0 * VC[1] + 3.0 * VB[1] - A * VB[0] - 2.0 * VA[2] - A * VA[1] - C * VA[0] +
          A2 * VA[0],
      VC[0] - 2.0 * VB[0] + VA[1] + A * VA[0],
  };
}

// ---------------------------------------------------------------------------
// Lax pair. Components are ordered d0, d1, d2, d3, d_lambda; each component is
// a polynomial in lambda stored as ascending coefficients (degree <= 3).

template <class T>
using LambdaCoeffs = std::array<T, 4>;

template <class T>
struct LaxField {
  std::array<LambdaCoeffs<T>, 5> comp;
};

template <class T>
struct LaxPairCoeffs {
  LaxField<T> l0, l1;
};

template <class T>
LaxPairCoeffs<T> lax_formula(const Quad<T>& v, const Grad4<T>& g) {
  const T& A = v[0];
  const T& B = v[1];
  const T& C = v[2];
  const T& D = v[3];
  const T &A0 = g[0][0], &A1 = g[0][1], &A2 = g[0][2], &A3 = g[0][3];
  const T& B1 = g[1][1];
  const T &C0 = g[2][0], &C1 = g[2][1], &C2 = g[2][2];
  const T zero(0.0);
  const T AA = A * A;

  LaxPairCoeffs<T> out;
  // L0 = d3 + (-C + 2 A l - 3 l^2) d1 + (-D + AC - 2 A^2 l + 4 A l^2 - 2 l^3) d0 + N(l) dl
  out.l0.comp[0] = {-D + A * C, -2.0 * AA, 4.0 * A, T(-2.0)};
  out.l0.comp[1] = {-C, 2.0 * A, T(-3.0), zero};
  out.l0.comp[2] = {zero, zero, zero, zero};
  out.l0.comp[3] = {T(1.0), zero, zero, zero};
  const T n0 = 0.5 * (AA * A1) - A * B * A0 + A * A2 - A * B1 - 0.5 * (D * A0) - 0.5 * C2 +
               0.5 * (A * C1) + 0.5 * (B * C0) - 0.5 * (C * A1) + 0.5 * (A * C * A0) + 0.5 * A3;
  const T n1 = 3.0 * B1 - C1 - A * A1 - A * C0 + 2.0 * (B * A0) - 2.0 * A2;
  const T n2 = C0 - A1;
  out.l0.comp[4] = {n0, n1, n2, zero};

  // L1 = d2 + (-A + 2 l) d1 + (-B + A^2 - 2 A l + l^2) d0 + M(l) dl
  out.l1.comp[0] = {-B + AA, -2.0 * A, T(1.0), zero};
  out.l1.comp[1] = {-A, T(2.0), zero, zero};
  out.l1.comp[2] = {T(1.0), zero, zero, zero};
  out.l1.comp[3] = {zero, zero, zero, zero};
  const T m0 = 0.5 * (A * A1) + 0.5 * (A * C0) - B * A0 + A2 - B1;
  const T m1 = 0.5 * A1 - 0.5 * C0;
  out.l1.comp[4] = {m0, m1, zero, zero};
  return out;
}

/// Forward-mode dual number a + b eps, eps^2 = 0.
template <class T>
struct Dual {
  T a, b;

  Dual() = default;
  Dual(T a_, T b_) : a(a_), b(b_) {}
  explicit Dual(double c) : a(c), b(0.0) {}

  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator-(const Dual& x) { return {-x.a, -x.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
  friend Dual operator*(double s, const Dual& x) { return {s * x.a, s * x.b}; }
};

/// Symmetric Hessians as upper triangles, hess[field][slot] with
/// slot(i, j) = i * 4 - i * (i - 1) / 2 + (j - i) for i <= j.
template <class T>
using Hess4 = std::array<std::array<T, 10>, 4>;

constexpr int hess_slot(int i, int j) {
  if (i > j) {
    const int t = i;
    i = j;
    j = t;
  }
  return i * 4 - i * (i - 1) / 2 + (j - i);
}

template <class T>
using CommutatorCoeffs = std::array<std::array<T, 7>, 5>;

/// [L0, L1] at one point from the 2-jet. Spatial derivatives of the
/// coefficients come from dual-number evaluation along each axis; d_lambda is
/// exact on the polynomial coefficients.
template <class T>
CommutatorCoeffs<T> commutator_formula(const Quad<T>& v, const Grad4<T>& g, const Hess4<T>& h) {
  const LaxPairCoeffs<T> base = lax_formula(v, g);

  // d_i of every coefficient, i = 0..3.
  std::array<LaxPairCoeffs<T>, 4> dx;
  for (int i = 0; i < 4; ++i) {
    Quad<Dual<T>> dv;
    Grad4<Dual<T>> dg;
    for (int k = 0; k < 4; ++k) {
      dv[k] = Dual<T>(v[k], g[k][i]);
      for (int j = 0; j < 4; ++j) dg[k][j] = Dual<T>(g[k][j], h[k][hess_slot(j, i)]);
    }
    const LaxPairCoeffs<Dual<T>> d = lax_formula(dv, dg);
    for (int c = 0; c < 5; ++c)
      for (int p = 0; p < 4; ++p) {
        dx[i].l0.comp[c][p] = d.l0.comp[c][p].b;
        dx[i].l1.comp[c][p] = d.l1.comp[c][p].b;
      }
  }

  const T zero(0.0);
  CommutatorCoeffs<T> out;
  for (auto& c : out) c.fill(zero);

  // X(Y^k) = sum_i X^i d_i Y^k + X^l d_l Y^k, accumulated with sign s.
  auto accumulate = [&](const LaxField<T>& X, const LaxField<T>& Y,
                        const std::array<LaxField<T>, 4>& dY, double s) {
    for (int k = 0; k < 5; ++k) {
      for (int i = 0; i < 4; ++i)
        for (int p = 0; p < 4; ++p)
          for (int q = 0; q < 4; ++q)
            out[k][p + q] = out[k][p + q] + s * (X.comp[i][p] * dY[i].comp[k][q]);
      // d_lambda of Y^k has coefficients (q + 1) * Y^k_{q+1}.
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 3; ++q)
          out[k][p + q] = out[k][p + q] + (s * (q + 1)) * (X.comp[4][p] * Y.comp[k][q + 1]);
    }
  };
  std::array<LaxField<T>, 4> dl0, dl1;
  for (int i = 0; i < 4; ++i) {
    dl0[i] = dx[i].l0;
    dl1[i] = dx[i].l1;
  }
  accumulate(base.l0, base.l1, dl1, 1.0);
  accumulate(base.l1, base.l0, dl0, -1.0);
  return out;
}

}  // namespace gl2::kernels
