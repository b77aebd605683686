#pragma once

// Pointwise torsion test for the G-structure defined by a map h: V -> GL(V).
//
// With psi_h = h^-1 dh and tau_h = delta(psi_h), the structure is torsion-free
// at a point iff tau_h lies in delta(V* (x) Ad(h^-1) g). When it does, a
// g-valued alpha with delta(psi_h + Ad(h^-1) alpha) = 0 is recovered as
// alpha = -h beta h^-1 for any beta solving delta(beta) = tau_h.

#include "gl2/tensor_core.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace gl2::hflat {

using tensor::ConnectionValued;
using tensor::MatN;
using tensor::Subspace;
using tensor::TorsionTensor;

/// Value and coordinate partials of h at one point.
struct HJet {
  MatN h;
  std::vector<MatN> dh;  // dh[i] = d h / d x^i

  /// Throws StructuralError on shape mismatch.
  void validate() const;
  /// 2-norm condition number of h.
  double condition() const;
};

/// Relative tolerance for "torsion-free": norm <= kTorsionTol * (|tau_h| + 1).
inline constexpr double kTorsionTol = 1e-9;

/// psi[i] = h^-1 dh[i]. Throws SingularMatrixError.
ConnectionValued maurer_cartan_pullback(const HJet& j);

/// span{h^-1 a h : a in g}, i.e. Ad(h^-1) g.
Subspace adjoint_conjugate(const MatN& h, const Subspace& g);

struct TorsionResidual {
  double norm = 0.0;
  TorsionTensor residual;
  double tau_norm = 0.0;  // |tau_h|, the scale used by is_torsion_free

  bool is_torsion_free(double tol = kTorsionTol) const { return norm <= tol * (tau_norm + 1.0); }
};

TorsionResidual torsion_residual(const HJet& j, const Subspace& g);

/// Returns g-valued alpha with delta(psi_h + Ad(h^-1) alpha) = 0, verified
/// before returning. Throws TorsionError when the structure has torsion.
ConnectionValued recover_connection(const HJet& j, const Subspace& g, double tol = kTorsionTol);

/// Max-abs of delta(psi_h + Ad(h^-1) alpha).
double connection_defect(const HJet& j, const ConnectionValued& alpha);

// CLI bundle {"h": rows, "dh": [rows x n], "g_basis": [rows ...]}.
struct SpencerBundle {
  HJet jet;
  Subspace g;
};
SpencerBundle spencer_bundle_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const MatN& m);
MatN matrix_from_json(const nlohmann::json& rows);

}  // namespace gl2::hflat
