#include "gl2/tensor_core.hpp"

#include "gl2/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace gl2::tensor {

namespace {

Eigen::JacobiSVD<MatN> thin_svd(const MatN& m) {
  return Eigen::JacobiSVD<MatN>(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

int rank_from_singular_values(const VecN& s, double rel_tol) {
  if (s.size() == 0) return 0;
  const double top = s(0);
  if (!(top > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * top) ++r;
  return r;
}

void require_square(const MatN& m, int n, const char* what) {
  if (m.rows() != n || m.cols() != n)
    throw StructuralError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                          std::to_string(n) + " matrix, got " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()));
}

}  // namespace

ConditionReport condition_report(const MatN& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return {std::numeric_limits<double>::infinity(), false};
  Eigen::JacobiSVD<MatN> svd(m);
  const VecN& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  const double hi = s(0);
  if (!(lo > 0.0)) return {std::numeric_limits<double>::infinity(), false};
  const double cond = hi / lo;
  return {cond, std::isfinite(cond) && cond < 1e12};
}

MatN checked_inverse(const MatN& m, std::string_view what) {
  const auto rep = condition_report(m);
  if (!rep.invertible)
    throw SingularMatrixError(std::string(what) + ": matrix is singular (condition " +
                                  std::to_string(rep.condition) + ")",
                              rep.condition);
  return m.inverse();
}

// ---------------------------------------------------------------------------

ConnectionValued::ConnectionValued(std::vector<MatN> psi) : psi_(std::move(psi)) {
  const int n = dim();
  for (const auto& m : psi_) require_square(m, n, "ConnectionValued");
  for (const auto& m : psi_)
    if (!m.allFinite()) throw StructuralError("ConnectionValued: non-finite entry");
}

ConnectionValued ConnectionValued::zero(int n) {
  return ConnectionValued(std::vector<MatN>(static_cast<std::size_t>(n), MatN::Zero(n, n)));
}

double ConnectionValued::max_abs() const {
  double m = 0.0;
  for (const auto& p : psi_)
    if (p.size() > 0) m = std::max(m, p.cwiseAbs().maxCoeff());
  return m;
}

ConnectionValued operator+(const ConnectionValued& a, const ConnectionValued& b) {
  if (a.dim() != b.dim()) throw StructuralError("ConnectionValued: dimension mismatch");
  std::vector<MatN> out(a.psi_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.psi_[i] + b.psi_[i];
  return ConnectionValued(std::move(out));
}

ConnectionValued operator-(const ConnectionValued& a, const ConnectionValued& b) {
  return a + (-1.0) * b;
}

ConnectionValued operator*(double s, const ConnectionValued& a) {
  std::vector<MatN> out(a.psi_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = s * a.psi_[i];
  return ConnectionValued(std::move(out));
}

// ---------------------------------------------------------------------------

TorsionTensor::TorsionTensor(int n) : n_(n), c_(VecN::Zero(size_for(n))) {}

TorsionTensor::TorsionTensor(int n, VecN components) : n_(n), c_(std::move(components)) {
  if (c_.size() != size_for(n))
    throw StructuralError("TorsionTensor: expected " + std::to_string(size_for(n)) +
                          " components, got " + std::to_string(c_.size()));
}

int TorsionTensor::pair_index(int n, int i, int j) noexcept {
  // number of pairs (a, b), a < b, preceding (i, j)
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

double TorsionTensor::at(int k, int i, int j) const {
  if (i == j) return 0.0;
  if (i < j) return c_(pair_index(n_, i, j) * n_ + k);
  return -c_(pair_index(n_, j, i) * n_ + k);
}

void TorsionTensor::set(int k, int i, int j, double value) {
  if (i == j) throw StructuralError("TorsionTensor::set: diagonal slot is identically zero");
  if (i < j)
    c_(pair_index(n_, i, j) * n_ + k) = value;
  else
    c_(pair_index(n_, j, i) * n_ + k) = -value;
}

TorsionTensor operator+(const TorsionTensor& a, const TorsionTensor& b) {
  if (a.n_ != b.n_) throw StructuralError("TorsionTensor: dimension mismatch");
  return TorsionTensor(a.n_, a.c_ + b.c_);
}

TorsionTensor operator-(const TorsionTensor& a, const TorsionTensor& b) {
  if (a.n_ != b.n_) throw StructuralError("TorsionTensor: dimension mismatch");
  return TorsionTensor(a.n_, a.c_ - b.c_);
}

TorsionTensor operator*(double s, const TorsionTensor& a) { return TorsionTensor(a.n_, s * a.c_); }

// ---------------------------------------------------------------------------

Subspace::Subspace(int n, std::vector<MatN> basis) : n_(n), basis_(std::move(basis)) {
  for (const auto& b : basis_) require_square(b, n_, "Subspace");
  if (!basis_.empty() && numerical_rank(as_columns()) != dim())
    throw StructuralError("Subspace: basis of " + std::to_string(dim()) +
                          " elements is linearly dependent");
}

Subspace Subspace::full(int n) {
  std::vector<MatN> basis;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      MatN e = MatN::Zero(n, n);
      e(r, c) = 1.0;
      basis.push_back(std::move(e));
    }
  return Subspace(n, std::move(basis));
}

Subspace Subspace::empty(int n) { return Subspace(n, {}); }

MatN Subspace::as_columns() const {
  MatN cols(n_ * n_, dim());
  for (int r = 0; r < dim(); ++r)
    cols.col(r) = Eigen::Map<const VecN>(basis_[static_cast<std::size_t>(r)].data(), n_ * n_);
  return cols;
}

Subspace Subspace::orthonormalized() const {
  if (basis_.empty()) return *this;
  const MatN q = column_basis(as_columns());
  std::vector<MatN> out;
  for (Eigen::Index r = 0; r < q.cols(); ++r) out.push_back(Eigen::Map<const MatN>(q.col(r).data(), n_, n_));
  return Subspace(n_, std::move(out));
}

bool Subspace::contains(const MatN& a, double tol) const {
  require_square(a, n_, "Subspace::contains");
  const VecN v = Eigen::Map<const VecN>(a.data(), n_ * n_);
  if (basis_.empty()) return v.norm() <= tol;
  const MatN q = column_basis(as_columns());
  return (v - q * (q.transpose() * v)).norm() <= tol * (v.norm() + 1.0);
}

bool same_span(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient() || a.dim() != b.dim()) return false;
  if (a.dim() == 0) return true;
  MatN both(a.ambient() * a.ambient(), a.dim() + b.dim());
  both << a.as_columns(), b.as_columns();
  return numerical_rank(both) == a.dim();
}

// ---------------------------------------------------------------------------

TorsionTensor skew_symmetrize(const ConnectionValued& t) {
  const int n = t.dim();
  TorsionTensor out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) out.set(k, i, j, t[i](k, j) - t[j](k, i));
  return out;
}

namespace {

MatN stack_components(std::span<const TorsionTensor> tensors, int n) {
  MatN m(TorsionTensor::size_for(n), static_cast<Eigen::Index>(tensors.size()));
  for (std::size_t c = 0; c < tensors.size(); ++c) {
    if (tensors[c].dim() != n) throw StructuralError("torsion tensors of mixed dimension");
    m.col(static_cast<Eigen::Index>(c)) = tensors[c].components();
  }
  return m;
}

TorsionTensor delta_of_slot(int n, int slot, const MatN& a) {
  std::vector<MatN> psi(static_cast<std::size_t>(n), MatN::Zero(n, n));
  psi[static_cast<std::size_t>(slot)] = a;
  return skew_symmetrize(ConnectionValued(std::move(psi)));
}

}  // namespace

DeltaImage delta_image_basis(const Subspace& a) {
  const int n = a.ambient();
  DeltaImage out;
  for (int i = 0; i < n; ++i)
    for (const auto& b : a.basis()) out.spanning.push_back(delta_of_slot(n, i, b));
  if (out.spanning.empty()) return out;
  const MatN q = column_basis(stack_components(out.spanning, n));
  out.rank = static_cast<int>(q.cols());
  for (Eigen::Index c = 0; c < q.cols(); ++c) out.reduced.emplace_back(n, q.col(c));
  return out;
}

Projection project_residual(const TorsionTensor& tau, std::span<const TorsionTensor> image) {
  if (image.empty()) return {tau.norm(), tau};
  const int n = tau.dim();
  const MatN q = column_basis(stack_components(image, n));
  const VecN& v = tau.components();
  TorsionTensor r(n, v - q * (q.transpose() * v));
  return {r.norm(), r};
}

ConnectionValued solve_in_image(const TorsionTensor& tau, const Subspace& a, double tol) {
  const int n = tau.dim();
  if (a.ambient() != n) throw StructuralError("solve_in_image: dimension mismatch");
  const Subspace onb = a.orthonormalized();
  const DeltaImage img = delta_image_basis(onb);
  const Projection proj = project_residual(tau, img.spanning);
  if (proj.residual_norm > tol * (tau.norm() + 1.0))
    throw NotInImageError("solve_in_image: tau is not in delta(V* (x) A); residual norm " +
                              std::to_string(proj.residual_norm),
                          proj.residual_norm);
  std::vector<MatN> psi(static_cast<std::size_t>(n), MatN::Zero(n, n));
  if (onb.dim() == 0) return ConnectionValued(std::move(psi));
  // Columns are delta(e^i (x) q_r) for an orthonormal q, so the coefficient
  // norm equals the Frobenius norm of beta.
  const VecN coeff = min_norm_solve(stack_components(img.spanning, n), tau.components());
  const int m = onb.dim();
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < m; ++r)
      psi[static_cast<std::size_t>(i)] += coeff(i * m + r) * onb.basis()[static_cast<std::size_t>(r)];
  return ConnectionValued(std::move(psi));
}

// ---------------------------------------------------------------------------

int numerical_rank(const MatN& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<MatN> svd(m);
  return rank_from_singular_values(svd.singularValues(), rel_tol);
}

MatN column_basis(const MatN& m, double rel_tol) {
  if (m.size() == 0) return MatN(m.rows(), 0);
  const auto svd = thin_svd(m);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

MatN null_space(const MatN& m, double rel_tol) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return MatN::Identity(cols, cols);
  Eigen::JacobiSVD<MatN> svd(m, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(cols - r);
}

VecN principal_angles(const MatN& a, const MatN& b) {
  const Eigen::Index k = std::min(a.cols(), b.cols());
  VecN angles(k);
  if (k == 0) return angles;
  // Cosines lose resolution near zero angle, so small angles come from the
  // sines of the component of b orthogonal to a.
  const MatN& small = a.cols() <= b.cols() ? a : b;
  const MatN& large = a.cols() <= b.cols() ? b : a;
  Eigen::JacobiSVD<MatN> cos_svd(large.transpose() * small);
  const VecN cosines = cos_svd.singularValues();  // descending
  const MatN orth = small - large * (large.transpose() * small);
  Eigen::JacobiSVD<MatN> sin_svd(orth);
  VecN sines = sin_svd.singularValues();  // descending, we want ascending
  std::reverse(sines.data(), sines.data() + sines.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c = std::clamp(cosines(i), -1.0, 1.0);
    const double s = std::clamp(sines(i), 0.0, 1.0);
    angles(i) = c * c >= 0.5 ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.data(), angles.data() + k);
  return angles;
}

double subspace_distance(const MatN& a, const MatN& b) {
  if (a.cols() != b.cols()) return std::numbers::pi / 2;
  if (a.cols() == 0) return 0.0;
  return principal_angles(a, b).maxCoeff();
}

VecN min_norm_solve(const MatN& m, const VecN& rhs, double rel_tol) {
  if (m.cols() == 0) return VecN(0);
  const auto svd = thin_svd(m);
  const VecN& s = svd.singularValues();
  const int r = rank_from_singular_values(s, rel_tol);
  VecN proj = svd.matrixU().leftCols(r).transpose() * rhs;
  for (int i = 0; i < r; ++i) proj(i) /= s(i);
  return svd.matrixV().leftCols(r) * proj;
}

}  // namespace gl2::tensor
