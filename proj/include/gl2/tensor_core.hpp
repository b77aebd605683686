#pragma once

// Small dense linear algebra for the (0,2) Spencer slot.
//
// Conventions used throughout:
//   * V = R^n with standard basis e_1..e_n, dual basis e^1..e^n.
//   * A V* (x) gl(V)-valued element T is stored as n matrices psi[i] = T(e_i).
//   * A vector-valued two-form tau is stored by its strictly upper pairs,
//     tau(e_i, e_j) for i < j, so antisymmetry cannot be violated.
//   * The skew-symmetrisation is (delta T)(e_i, e_j) = T(e_i) e_j - T(e_j) e_i.

#include <Eigen/Dense>

#include <span>
#include <string_view>
#include <vector>

namespace gl2::tensor {

using MatN = Eigen::MatrixXd;
using VecN = Eigen::VectorXd;

/// Relative singular-value cutoff for every rank decision in the library.
inline constexpr double kRankRelTol = 1e-10;

struct ConditionReport {
  double condition = 0.0;  // sigma_max / sigma_min, +inf when singular
  bool invertible = false;
};

/// 2-norm condition number. A matrix counts as invertible when the
/// condition number stays below 1e12.
ConditionReport condition_report(const MatN& m);

/// Inverse with an explicit singularity check; throws SingularMatrixError.
MatN checked_inverse(const MatN& m, std::string_view what);

/// A gl(V)-valued one-form at a point: psi[i] is paired with dx^i.
class ConnectionValued {
 public:
  explicit ConnectionValued(std::vector<MatN> psi);
  static ConnectionValued zero(int n);

  int dim() const noexcept { return static_cast<int>(psi_.size()); }
  const MatN& operator[](int i) const { return psi_[static_cast<std::size_t>(i)]; }
  const std::vector<MatN>& components() const noexcept { return psi_; }

  double max_abs() const;

  friend ConnectionValued operator+(const ConnectionValued& a, const ConnectionValued& b);
  friend ConnectionValued operator-(const ConnectionValued& a, const ConnectionValued& b);
  friend ConnectionValued operator*(double s, const ConnectionValued& a);

 private:
  std::vector<MatN> psi_;
};

/// V-valued two-form tau^k_{ij} = -tau^k_{ji}.
///
/// Flat layout: pair p enumerates (i, j), i < j, lexicographically; the
/// component tau^k_{ij} lives at p * n + k.
class TorsionTensor {
 public:
  explicit TorsionTensor(int n);
  TorsionTensor(int n, VecN components);

  static int size_for(int n) noexcept { return n * n * (n - 1) / 2; }
  static int pair_index(int n, int i, int j) noexcept;

  int dim() const noexcept { return n_; }
  /// Signed accessor; both index orders are accepted and tau^k_{ii} = 0.
  double at(int k, int i, int j) const;
  /// Sets tau^k_{ij} (and implicitly tau^k_{ji} = -value). Requires i != j.
  void set(int k, int i, int j, double value);

  const VecN& components() const noexcept { return c_; }
  double norm() const { return c_.norm(); }
  double max_abs() const { return c_.size() == 0 ? 0.0 : c_.cwiseAbs().maxCoeff(); }

  friend TorsionTensor operator+(const TorsionTensor& a, const TorsionTensor& b);
  friend TorsionTensor operator-(const TorsionTensor& a, const TorsionTensor& b);
  friend TorsionTensor operator*(double s, const TorsionTensor& a);

 private:
  int n_;
  VecN c_;
};

/// Linear subspace of gl(V) = V* (x) V given by an independent basis.
class Subspace {
 public:
  /// Throws StructuralError on mixed sizes or a dependent basis.
  Subspace(int n, std::vector<MatN> basis);

  static Subspace full(int n);
  static Subspace empty(int n);

  int dim() const noexcept { return static_cast<int>(basis_.size()); }
  int ambient() const noexcept { return n_; }
  const std::vector<MatN>& basis() const noexcept { return basis_; }

  /// Frobenius-orthonormal basis of the same span.
  Subspace orthonormalized() const;
  /// Basis elements vectorised column-major, one per column (n^2 x m).
  MatN as_columns() const;
  bool contains(const MatN& a, double tol = 1e-9) const;

 private:
  int n_;
  std::vector<MatN> basis_;
};

/// True when both subspaces have the same dimension and the stacked basis
/// has that rank.
bool same_span(const Subspace& a, const Subspace& b);

// ---------------------------------------------------------------------------
// Spencer machinery

TorsionTensor skew_symmetrize(const ConnectionValued& t);

struct DeltaImage {
  std::vector<TorsionTensor> spanning;  // delta(e^i (x) a_r), i-major
  std::vector<TorsionTensor> reduced;   // orthonormal basis of the span
  int rank = 0;
};

DeltaImage delta_image_basis(const Subspace& a);

struct Projection {
  double residual_norm = 0.0;
  TorsionTensor residual;
};

/// Component of tau orthogonal to span(image) in the Euclidean inner
/// product on stored components.
Projection project_residual(const TorsionTensor& tau, std::span<const TorsionTensor> image);

/// Minimum-norm beta in V* (x) A with delta(beta) = tau. Throws
/// NotInImageError when the orthogonal residual exceeds tol * (|tau| + 1).
ConnectionValued solve_in_image(const TorsionTensor& tau, const Subspace& a, double tol = 1e-9);

// ---------------------------------------------------------------------------
// Generic numerics shared by the other modules

int numerical_rank(const MatN& m, double rel_tol = kRankRelTol);
/// Orthonormal basis of the column space.
MatN column_basis(const MatN& m, double rel_tol = kRankRelTol);
/// Orthonormal basis of the null space (columns).
MatN null_space(const MatN& m, double rel_tol = kRankRelTol);
/// Principal angles between column spans, ascending. Both inputs must have
/// orthonormal columns.
VecN principal_angles(const MatN& a, const MatN& b);
/// Largest principal angle, or pi/2 when the dimensions differ.
double subspace_distance(const MatN& a, const MatN& b);
/// Minimum-norm least-squares solution of m x = rhs.
VecN min_norm_solve(const MatN& m, const VecN& rhs, double rel_tol = kRankRelTol);

}  // namespace gl2::tensor
