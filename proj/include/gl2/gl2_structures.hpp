#pragma once

// Binary cubics, the cone of perfect cubes, the Sym^3 representation of
// GL(2,R), the group H of unit upper-triangular matrices
//
//     | 1 A B D |
//     | 0 1 A C |
//     | 0 0 1 A |
//     | 0 0 0 1 |
//
// and the 4th-order ODE correspondence.
//
// V_3 (binary cubics) is identified with R^4 through x^(3-i) y^i -> e_(i+1).

#include "gl2/tensor_core.hpp"
#include "gl2/trunc_poly.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <optional>
#include <string>

namespace gl2::structures {

using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Values4 = std::array<double, 4>;

/// p0 x^3 + p1 x^2 y + p2 x y^2 + p3 y^3.
struct BinaryCubic {
  std::array<double, 4> p{};

  double operator()(double x, double y) const {
    return p[0] * x * x * x + p[1] * x * x * y + p[2] * x * y * y + p[3] * y * y * y;
  }
};

/// 18abcd - 4b^3 d + b^2 c^2 - 4ac^3 - 27a^2 d^2 for a s^3 + b s^2 t + c s t^2 + d t^3.
template <class T>
T discriminant(const T& a, const T& b, const T& c, const T& d) {
  return T(18) * a * b * c * d - T(4) * b * b * b * d + b * b * c * c - T(4) * a * c * c * c -
         T(27) * a * a * d * d;
}
inline double discriminant(const BinaryCubic& f) {
  return discriminant(f.p[0], f.p[1], f.p[2], f.p[3]);
}

/// (s^3, 3 s^2 t, 3 s t^2, t^3): coordinates of (s x + t y)^3.
Vec4 cone_point(double s, double t);

/// (XZ - Y^2, YW - Z^2, XW - YZ).
std::array<double, 3> twisted_cubic_eval(double X, double Y, double Z, double W);

/// Twisted-cubic equations after undoing the binomial weights, so that
/// cone points evaluate to zero.
std::array<double, 3> cone_equations(const Vec4& v);

/// Substitution action (rho(g) p)(v) = p(g^-1 v) on V_3 in the monomial basis.
/// Throws SingularMatrixError for singular g.
Mat4 sym3_action(const Mat2& g);

/// Differential of sym3_action at the identity.
Mat4 sym3_differential(const Mat2& a);

/// rho'(E_00), rho'(E_01), rho'(E_10), rho'(E_11).
std::array<Mat4, 4> gl2_lie_algebra_basis();
tensor::Subspace gl2_lie_algebra();

Mat4 H_matrix(double A, double B, double C, double D);

/// (A, B, C, D) when m has the H pattern within tol, otherwise nothing.
std::optional<Values4> h_parameters(const Mat4& m, double tol = 1e-12);

/// Derivatives of H_matrix along A, B, C, D.
std::array<Mat4, 4> h_lie_algebra_basis();
tensor::Subspace h_lie_algebra();

/// Image of the Heisenberg element [[1,a,c],[0,1,b],[0,0,1]].
Mat4 heisenberg_embed(double a, double b, double c);

struct FrameCoefficients {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, delta = 0.0;
};

template <class S>
std::array<S, 4> h_parameters_from_alpha(const S& alpha, const S& beta, const S& gamma,
                                         const S& delta) {
  return {-alpha, alpha * alpha - beta, alpha * alpha - gamma,
          alpha * (gamma + beta) - alpha * alpha * alpha - delta};
}

struct HFromAlpha {
  Mat4 h;
  Values4 abcd;
};

/// Coframe matrix dual to the framing V_0 = d_0, V_1 = d_1 + alpha d_0,
/// V_2 = d_2 + alpha d_1 + beta d_0, V_3 = d_3 + alpha d_2 + gamma d_1 + delta d_0.
HFromAlpha h_from_alpha(const FrameCoefficients& f);

/// Columns are V_0..V_3 in coordinate components.
Mat4 framing_from_alpha(const FrameCoefficients& f);

struct FkCoframe {
  Mat4 h;
  int rank = 0;
  bool rank_deficient = false;
};

/// Coframe matrix with entry (r, j) = (1 / binom(3, r)) * sum over r-subsets
/// S of {0..3} \ {j} of prod_{k in S} b_k prod_{k not in S, k != j} a_k.
FkCoframe fk_coframe(const Values4& a, const Values4& b);

// ---------------------------------------------------------------------------
// ODE correspondence x'''' = F(y, x_0, x_1, x_2, x_3) restricted to y = 0.

/// Jet-space variable order: y, x0, x1, x2, x3.
enum JetVar : int { kY = 0, kX0 = 1, kX1 = 2, kX2 = 3, kX3 = 4 };
using JetExponent = Exponent<5>;

/// Partial derivatives of F at a point of {y = 0}. Entries not listed are
/// zero through `order`; `order` < 3 is an incomplete jet.
template <class S>
struct F3Jet {
  std::array<S, 4> point{S(0), S(0), S(0), S(0)};  // x0..x3
  int order = 3;
  std::map<JetExponent, S> partials;

  /// Key spells the differentiation variables, e.g. "" (value), "3", "y03".
  void set(const std::string& key, S v) { partials[parse_key(key)] = v; }

  static JetExponent parse_key(const std::string& key);
};

template <class S>
struct OdeCorrespondence {
  std::array<S, 4> raw;       // alpha, beta, gamma, delta before rescaling
  std::array<S, 4> rescaled;  // coefficients in the normal-form framing
  std::array<S, 4> abcd;      // H parameters of the rescaled framing
};

template <class S>
OdeCorrespondence<S> ode_correspondence(const F3Jet<S>& jet);

}  // namespace gl2::structures

#include "gl2/detail/ode_correspondence_impl.hpp"
