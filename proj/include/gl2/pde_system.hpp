#pragma once

// The first-order system for (A, B, C, D): framing, the four residuals,
// structure functions of the framing, the bracket-span criterion, the
// principal symbol, and the bridge to the Spencer test.

#include "gl2/gl2_structures.hpp"
#include "gl2/hflat_engine.hpp"
#include "gl2/jet_fields.hpp"

#include <Eigen/Dense>

#include <array>
#include <span>

namespace gl2::pde {

using jets::FieldJet;
using jets::Values4;
using Mat4 = Eigen::Matrix4d;
using Covector = std::array<double, 4>;

struct ResidualVec {
  std::array<double, 4> r{};

  double norm() const;
  double max_abs() const;
};

/// Columns V_0..V_3 of the framing dual to H(A,B,C,D) dx.
Mat4 framing(const Values4& abcd);

ResidualVec residuals(const FieldJet& j);

/// c_ij^k with [V_i, V_j] = sum_k c_ij^k V_k; antisymmetric in (i, j) by storage.
class StructureConstants {
 public:
  /// Signed accessor, c(i, i, k) = 0.
  double operator()(int i, int j, int k) const;
  void set(int i, int j, int k, double v);
  double max_abs() const;

 private:
  static int pair(int i, int j) { return i * 4 - i * (i + 1) / 2 + (j - i - 1); }
  std::array<double, 24> c_{};
};

StructureConstants structure_constants(const FieldJet& j);

/// c^0_23, c^1_23 - 2c^0_13, c^2_23 - 2c^1_13 + c^0_03 + 3c^0_12,
/// c^3_23 - 2c^2_13 + c^1_03 + 3c^1_12 - 2c^0_02.
std::array<double, 4> c_equations(const StructureConstants& c);

/// Distance of [V(l), V'(l)] to span{V(l), V'(l), V''(l)} with
/// V(l) = l^3 V0 + 3 l^2 V1 + 3 l V2 + V3.
double bracket_span_defect(const FieldJet& j, double lambda);
/// Max of bracket_span_defect over the samples.
double bracket_span_check(const FieldJet& j, std::span<const double> lambdas);

/// sigma(xi)_{rc} = sum_i xi_i * (coefficient of d_i(field c) in equation r).
Mat4 principal_symbol(const Values4& abcd, const Covector& xi);

/// f_xi(s, t) = xi(s^3 V0 + 3 s^2 t V1 + 3 s t^2 V2 + t^3 V3).
structures::BinaryCubic symbol_cubic(const Values4& abcd, const Covector& xi);

/// h = H(A,B,C,D) with dh[i] read from the jet's gradients.
hflat::HJet h_jet(const FieldJet& j);

struct SpencerBridge {
  double spencer_norm = 0.0;
  double residual_norm = 0.0;
};

/// Spencer residual for g = gl(2) alongside the residual norm.
SpencerBridge spencer_bridge(const FieldJet& j);

// ---------------------------------------------------------------------------
// Linear maps on the 16 first derivatives for a fixed 0-jet. Column index is
// field * 4 + direction (A_0..A_3, B_0..B_3, ...).

Eigen::MatrixXd residual_map(const Values4& abcd);
Eigen::MatrixXd c_equation_map(const Values4& abcd);
/// Projection of tau_h onto the complement of the Spencer image (24 x 16).
Eigen::MatrixXd spencer_map(const Values4& abcd);

struct KernelComparison {
  int dim_residual = 0;
  int dim_c_equations = 0;
  int dim_spencer = 0;
  double angle_residual_c = 0.0;        // largest principal angle
  double angle_residual_spencer = 0.0;

  double worst_angle() const;
};

KernelComparison compare_kernels(const Values4& abcd);

/// Jet with the given values and only first derivatives set.
FieldJet first_order_jet(const Values4& abcd, const Eigen::VectorXd& derivatives16);

}  // namespace gl2::pde
