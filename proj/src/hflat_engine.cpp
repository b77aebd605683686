#include "gl2/hflat_engine.hpp"

#include "gl2/errors.hpp"

#include <string>

namespace gl2::hflat {

void HJet::validate() const {
  const auto n = h.rows();
  if (h.cols() != n) throw StructuralError("HJet: h must be square");
  if (static_cast<Eigen::Index>(dh.size()) != n)
    throw StructuralError("HJet: expected " + std::to_string(n) + " partials, got " +
                          std::to_string(dh.size()));
  for (const auto& d : dh)
    if (d.rows() != n || d.cols() != n) throw StructuralError("HJet: partial has wrong shape");
}

double HJet::condition() const { return tensor::condition_report(h).condition; }

ConnectionValued maurer_cartan_pullback(const HJet& j) {
  j.validate();
  const MatN hinv = tensor::checked_inverse(j.h, "maurer_cartan_pullback");
  std::vector<MatN> psi;
  psi.reserve(j.dh.size());
  for (const auto& d : j.dh) psi.push_back(hinv * d);
  return ConnectionValued(std::move(psi));
}

Subspace adjoint_conjugate(const MatN& h, const Subspace& g) {
  if (h.rows() != g.ambient()) throw StructuralError("adjoint_conjugate: dimension mismatch");
  const MatN hinv = tensor::checked_inverse(h, "adjoint_conjugate");
  std::vector<MatN> basis;
  basis.reserve(g.basis().size());
  for (const auto& a : g.basis()) basis.push_back(hinv * a * h);
  return Subspace(g.ambient(), std::move(basis));
}

TorsionResidual torsion_residual(const HJet& j, const Subspace& g) {
  const TorsionTensor tau = tensor::skew_symmetrize(maurer_cartan_pullback(j));
  const auto image = tensor::delta_image_basis(adjoint_conjugate(j.h, g));
  auto proj = tensor::project_residual(tau, image.reduced);
  return {proj.residual_norm, std::move(proj.residual), tau.norm()};
}

double connection_defect(const HJet& j, const ConnectionValued& alpha) {
  const ConnectionValued psi = maurer_cartan_pullback(j);
  const MatN hinv = tensor::checked_inverse(j.h, "connection_defect");
  std::vector<MatN> conj;
  for (const auto& a : alpha.components()) conj.push_back(hinv * a * j.h);
  return tensor::skew_symmetrize(psi + ConnectionValued(std::move(conj))).max_abs();
}

ConnectionValued recover_connection(const HJet& j, const Subspace& g, double tol) {
  const TorsionResidual res = torsion_residual(j, g);
  if (!res.is_torsion_free(tol))
    throw TorsionError("recover_connection: structure has torsion (residual norm " +
                           std::to_string(res.norm) + ")",
                       res.norm);
  const TorsionTensor tau = tensor::skew_symmetrize(maurer_cartan_pullback(j));
  const Subspace conj = adjoint_conjugate(j.h, g);
  const ConnectionValued beta = tensor::solve_in_image(tau, conj, tol);
  const MatN hinv = tensor::checked_inverse(j.h, "recover_connection");
  std::vector<MatN> alpha;
  for (const auto& b : beta.components()) alpha.push_back(-(j.h * b * hinv));
  ConnectionValued out(std::move(alpha));
  const double defect = connection_defect(j, out);
  if (defect > tol * (res.tau_norm + 1.0))
    throw TorsionError("recover_connection: verification failed, defect " + std::to_string(defect),
                       defect);
  return out;
}

nlohmann::json matrix_to_json(const MatN& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatN matrix_from_json(const nlohmann::json& rows) {
  if (!rows.is_array() || rows.empty()) throw UsageError("matrix must be a non-empty array of rows");
  const auto n_rows = static_cast<Eigen::Index>(rows.size());
  const auto n_cols = static_cast<Eigen::Index>(rows[0].size());
  MatN m(n_rows, n_cols);
  for (Eigen::Index r = 0; r < n_rows; ++r) {
    const auto& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n_cols)
      throw UsageError("matrix rows must all have length " + std::to_string(n_cols));
    for (Eigen::Index c = 0; c < n_cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

SpencerBundle spencer_bundle_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("h") || !j.contains("dh") || !j.contains("g_basis"))
    throw UsageError("spencer bundle needs keys h, dh, g_basis");
  HJet jet;
  jet.h = matrix_from_json(j["h"]);
  for (const auto& d : j["dh"]) jet.dh.push_back(matrix_from_json(d));
  try {
    jet.validate();
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  }
  std::vector<MatN> basis;
  for (const auto& b : j["g_basis"]) basis.push_back(matrix_from_json(b));
  const int n = static_cast<int>(jet.h.rows());
  try {
    return {std::move(jet), Subspace(n, std::move(basis))};
  } catch (const StructuralError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace gl2::hflat
