#include "gl2/pde_system.hpp"

#include "gl2/errors.hpp"
#include "gl2/kernels/formulas.hpp"

#include <algorithm>
#include <cmath>

namespace gl2::pde {

namespace {

using kernels::Dual;
using kernels::Grad4;
using kernels::Quad;

using Vec4 = Eigen::Vector4d;

Quad<double> to_quad(const Values4& v) { return {v[0], v[1], v[2], v[3]}; }

Mat4 framing_matrix(const kernels::FramingCoeffs<double>& f) {
  Mat4 v;
  v << 1, f.v1_0, f.v2_0, f.v3_0,
       0, 1, f.v2_1, f.v3_1,
       0, 0, 1, f.v3_2,
       0, 0, 0, 1;
  return v;
}

// d/dx^l of the framing matrix for l = 0..3, by dual-number evaluation.
std::array<Mat4, 4> framing_derivatives(const FieldJet& j) {
  std::array<Mat4, 4> out;
  for (int l = 0; l < 4; ++l) {
    Quad<Dual<double>> dv;
    for (int k = 0; k < 4; ++k)
      dv[k] = Dual<double>(j.f[static_cast<std::size_t>(k)].value,
                           j.f[static_cast<std::size_t>(k)].grad[static_cast<std::size_t>(l)]);
    const auto fc = kernels::framing_coeffs(dv);
    Mat4 d = Mat4::Zero();
    d(0, 1) = fc.v1_0.b;
    d(0, 2) = fc.v2_0.b;
    d(1, 2) = fc.v2_1.b;
    d(0, 3) = fc.v3_0.b;
    d(1, 3) = fc.v3_1.b;
    d(2, 3) = fc.v3_2.b;
    out[static_cast<std::size_t>(l)] = d;
  }
  return out;
}

// [X, Y]^m = X^l d_l Y^m - Y^l d_l X^m, with dX[l], dY[l] the partials.
Vec4 bracket(const Vec4& x, const std::array<Vec4, 4>& dx, const Vec4& y,
             const std::array<Vec4, 4>& dy) {
  Vec4 out = Vec4::Zero();
  for (int l = 0; l < 4; ++l) out += x(l) * dy[static_cast<std::size_t>(l)] - y(l) * dx[static_cast<std::size_t>(l)];
  return out;
}

void require_first_order(const FieldJet& j, const char* what) {
  if (j.order < 1) throw UsageError(std::string(what) + ": field jet needs first derivatives");
}

}  // namespace

double ResidualVec::norm() const {
  return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2] + r[3] * r[3]);
}

double ResidualVec::max_abs() const {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::abs(v));
  return m;
}

Mat4 framing(const Values4& abcd) { return framing_matrix(kernels::framing_coeffs(to_quad(abcd))); }

ResidualVec residuals(const FieldJet& j) {
  require_first_order(j, "residuals");
  Grad4<double> g;
  for (int k = 0; k < 4; ++k)
    for (int d = 0; d < 4; ++d) g[k][d] = j.f[static_cast<std::size_t>(k)].grad[static_cast<std::size_t>(d)];
  return {kernels::residual_formula(to_quad(j.values()), g)};
}

double StructureConstants::operator()(int i, int j, int k) const {
  if (i == j) return 0.0;
  if (i < j) return c_[static_cast<std::size_t>(pair(i, j) * 4 + k)];
  return -c_[static_cast<std::size_t>(pair(j, i) * 4 + k)];
}

void StructureConstants::set(int i, int j, int k, double v) {
  if (i == j) throw StructuralError("StructureConstants::set: i == j");
  if (i < j)
    c_[static_cast<std::size_t>(pair(i, j) * 4 + k)] = v;
  else
    c_[static_cast<std::size_t>(pair(j, i) * 4 + k)] = -v;
}

double StructureConstants::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

StructureConstants structure_constants(const FieldJet& j) {
  require_first_order(j, "structure_constants");
  const Mat4 v = framing(j.values());
  const auto dv = framing_derivatives(j);
  StructureConstants out;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      std::array<Vec4, 4> da, db;
      for (int l = 0; l < 4; ++l) {
        da[static_cast<std::size_t>(l)] = dv[static_cast<std::size_t>(l)].col(a);
        db[static_cast<std::size_t>(l)] = dv[static_cast<std::size_t>(l)].col(b);
      }
      const Vec4 br = bracket(v.col(a), da, v.col(b), db);
      // Unit upper-triangular framing: back substitution, no pivoting.
      const Vec4 c = v.triangularView<Eigen::UnitUpper>().solve(br);
      for (int k = 0; k < 4; ++k) out.set(a, b, k, c(k));
    }
  return out;
}

std::array<double, 4> c_equations(const StructureConstants& c) {
  return {
      c(2, 3, 0),
      c(2, 3, 1) - 2.0 * c(1, 3, 0),
      c(2, 3, 2) - 2.0 * c(1, 3, 1) + c(0, 3, 0) + 3.0 * c(1, 2, 0),
      c(2, 3, 3) - 2.0 * c(1, 3, 2) + c(0, 3, 1) + 3.0 * c(1, 2, 1) - 2.0 * c(0, 2, 0),
  };
}

double bracket_span_defect(const FieldJet& j, double lambda) {
  require_first_order(j, "bracket_span_check");
  const Mat4 v = framing(j.values());
  const auto dv = framing_derivatives(j);
  const double l = lambda;
  // Weights of V0..V3 in V, V', V''.
  const Vec4 w0(l * l * l, 3 * l * l, 3 * l, 1);
  const Vec4 w1(3 * l * l, 6 * l, 3, 0);
  const Vec4 w2(6 * l, 6, 0, 0);
  std::array<Vec4, 4> d0, d1;
  for (int k = 0; k < 4; ++k) {
    d0[static_cast<std::size_t>(k)] = dv[static_cast<std::size_t>(k)] * w0;
    d1[static_cast<std::size_t>(k)] = dv[static_cast<std::size_t>(k)] * w1;
  }
  const Vec4 br = bracket(v * w0, d0, v * w1, d1);
  Eigen::Matrix<double, 4, 3> span;
  span << v * w0, v * w1, v * w2;
  const Eigen::HouseholderQR<Eigen::Matrix<double, 4, 3>> qr(span);
  const Eigen::Matrix<double, 4, 3> q = qr.householderQ() * Eigen::Matrix<double, 4, 3>::Identity();
  return (br - q * (q.transpose() * br)).norm();
}

double bracket_span_check(const FieldJet& j, std::span<const double> lambdas) {
  double worst = 0.0;
  for (double l : lambdas) worst = std::max(worst, bracket_span_defect(j, l));
  return worst;
}

FieldJet first_order_jet(const Values4& abcd, const Eigen::VectorXd& derivatives16) {
  if (derivatives16.size() != 16) throw StructuralError("first_order_jet: expected 16 derivatives");
  FieldJet j;
  j.order = 1;
  for (std::size_t k = 0; k < 4; ++k) {
    j.f[k].value = abcd[k];
    for (std::size_t d = 0; d < 4; ++d) j.f[k].grad[d] = derivatives16(static_cast<Eigen::Index>(k * 4 + d));
  }
  return j;
}

Mat4 principal_symbol(const Values4& abcd, const Covector& xi) {
  // The residuals are linear in the gradients, so column c is the residual
  // of a jet whose only non-zero gradient is grad(field c) = xi.
  Mat4 s;
  for (int c = 0; c < 4; ++c) {
    Eigen::VectorXd d = Eigen::VectorXd::Zero(16);
    for (int i = 0; i < 4; ++i) d(c * 4 + i) = xi[static_cast<std::size_t>(i)];
    const ResidualVec r = residuals(first_order_jet(abcd, d));
    for (int row = 0; row < 4; ++row) s(row, c) = r.r[static_cast<std::size_t>(row)];
  }
  return s;
}

structures::BinaryCubic symbol_cubic(const Values4& abcd, const Covector& xi) {
  const Mat4 v = framing(abcd);
  const Eigen::RowVector4d x(xi[0], xi[1], xi[2], xi[3]);
  const Eigen::RowVector4d p = x * v;
  return {{p(0), 3.0 * p(1), 3.0 * p(2), p(3)}};
}

hflat::HJet h_jet(const FieldJet& j) {
  require_first_order(j, "h_jet");
  const auto v = j.values();
  hflat::HJet out;
  out.h = structures::H_matrix(v[0], v[1], v[2], v[3]);
  for (std::size_t i = 0; i < 4; ++i) {
    Mat4 d = structures::H_matrix(j.f[0].grad[i], j.f[1].grad[i], j.f[2].grad[i], j.f[3].grad[i]) -
             Mat4::Identity();
    out.dh.push_back(d);
  }
  return out;
}

SpencerBridge spencer_bridge(const FieldJet& j) {
  static const tensor::Subspace g = structures::gl2_lie_algebra();
  return {hflat::torsion_residual(h_jet(j), g).norm, residuals(j).norm()};
}

Eigen::MatrixXd residual_map(const Values4& abcd) {
  Eigen::MatrixXd m(4, 16);
  for (int c = 0; c < 16; ++c) {
    const ResidualVec r = residuals(first_order_jet(abcd, Eigen::VectorXd::Unit(16, c)));
    for (int row = 0; row < 4; ++row) m(row, c) = r.r[static_cast<std::size_t>(row)];
  }
  return m;
}

Eigen::MatrixXd c_equation_map(const Values4& abcd) {
  Eigen::MatrixXd m(4, 16);
  for (int c = 0; c < 16; ++c) {
    const auto e = c_equations(structure_constants(first_order_jet(abcd, Eigen::VectorXd::Unit(16, c))));
    for (int row = 0; row < 4; ++row) m(row, c) = e[static_cast<std::size_t>(row)];
  }
  return m;
}

Eigen::MatrixXd spencer_map(const Values4& abcd) {
  static const tensor::Subspace g = structures::gl2_lie_algebra();
  const Mat4 h = structures::H_matrix(abcd[0], abcd[1], abcd[2], abcd[3]);
  const auto image = tensor::delta_image_basis(hflat::adjoint_conjugate(h, g));
  Eigen::MatrixXd m(tensor::TorsionTensor::size_for(4), 16);
  for (int c = 0; c < 16; ++c) {
    const FieldJet j = first_order_jet(abcd, Eigen::VectorXd::Unit(16, c));
    const auto tau = tensor::skew_symmetrize(hflat::maurer_cartan_pullback(h_jet(j)));
    m.col(c) = tensor::project_residual(tau, image.reduced).residual.components();
  }
  return m;
}

double KernelComparison::worst_angle() const {
  return std::max(angle_residual_c, angle_residual_spencer);
}

KernelComparison compare_kernels(const Values4& abcd) {
  const Eigen::MatrixXd kr = tensor::null_space(residual_map(abcd));
  const Eigen::MatrixXd kc = tensor::null_space(c_equation_map(abcd));
  const Eigen::MatrixXd ks = tensor::null_space(spencer_map(abcd));
  KernelComparison out;
  out.dim_residual = static_cast<int>(kr.cols());
  out.dim_c_equations = static_cast<int>(kc.cols());
  out.dim_spencer = static_cast<int>(ks.cols());
  out.angle_residual_c = tensor::subspace_distance(kr, kc);
  out.angle_residual_spencer = tensor::subspace_distance(kr, ks);
  return out;
}

}  // namespace gl2::pde
