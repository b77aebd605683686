#include "gl2/errors.hpp"
#include "gl2/gl2_structures.hpp"
#include "gl2/hflat_engine.hpp"
#include "support.hpp"

using namespace gl2;
using namespace gl2::hflat;
using gl2::testing::for_all;
using gl2::testing::Gen;
using gl2::testing::max_abs;

namespace {

HJet scalar_jet(double u, const std::vector<double>& du, int n) {
  HJet j;
  j.h = std::exp(u) * MatN::Identity(n, n);
  for (double d : du) j.dh.push_back(d * j.h);
  return j;
}

HJet random_h_valued(Gen& g) {
  const auto v = g.quad();
  HJet j;
  j.h = structures::H_matrix(v[0], v[1], v[2], v[3]);
  for (int i = 0; i < 4; ++i) {
    const auto d = g.quad();
    j.dh.push_back(structures::H_matrix(d[0], d[1], d[2], d[3]) - MatN::Identity(4, 4));
  }
  return j;
}

HJet random_jet(Gen& g, int n) {
  HJet j;
  j.h = MatN::Identity(n, n) + 0.3 * g.matrix(n, n);
  for (int i = 0; i < n; ++i) j.dh.push_back(g.matrix(n, n));
  return j;
}

MatN so2() {
  MatN j(2, 2);
  j << 0, -1, 1, 0;
  return j;
}

}  // namespace

TEST_CASE("Maurer-Cartan pullback examples") {
  HJet id;
  id.h = MatN::Identity(3, 3);
  id.dh.assign(3, MatN::Zero(3, 3));
  CHECK(maurer_cartan_pullback(id).max_abs() == 0.0);

  const auto psi = maurer_cartan_pullback(scalar_jet(0.7, {0.5, -2.0}, 2));
  CHECK(max_abs(psi[0] - 0.5 * MatN::Identity(2, 2)) <= 1e-15);
  CHECK(max_abs(psi[1] + 2.0 * MatN::Identity(2, 2)) <= 1e-15);

  // (A, B, C, D) = (x0, 0, 0, 0) at the origin.
  HJet h;
  h.h = MatN::Identity(4, 4);
  h.dh = {structures::H_matrix(1, 0, 0, 0) - MatN::Identity(4, 4), MatN::Zero(4, 4), MatN::Zero(4, 4),
          MatN::Zero(4, 4)};
  const auto p = maurer_cartan_pullback(h);
  MatN expect = MatN::Zero(4, 4);
  expect(0, 1) = expect(1, 2) = expect(2, 3) = 1.0;
  CHECK(max_abs(p[0] - expect) == 0.0);
}

TEST_CASE("jet validation") {
  HJet bad;
  bad.h = MatN::Identity(2, 2);
  bad.dh = {MatN::Zero(2, 2)};
  CHECK_THROWS_AS(bad.validate(), StructuralError);
  HJet singular;
  singular.h = MatN::Zero(2, 2);
  singular.dh.assign(2, MatN::Zero(2, 2));
  CHECK_THROWS_AS(maurer_cartan_pullback(singular), SingularMatrixError);
}

TEST_CASE("adjoint conjugation") {
  const tensor::Subspace g = structures::gl2_lie_algebra();
  CHECK(tensor::same_span(adjoint_conjugate(MatN::Identity(4, 4), g), g));
  MatN d = MatN::Zero(2, 2);
  d.diagonal() << 2.0, 0.5;
  const auto c = adjoint_conjugate(d, tensor::Subspace(2, {so2()}));
  CHECK(c.dim() == 1);
  CHECK(c.contains(d.inverse() * so2() * d));
  for_all(20, [](Gen& g) {
    const auto v = g.quad();
    const MatN h = structures::H_matrix(v[0], v[1], v[2], v[3]);
    CHECK(tensor::same_span(adjoint_conjugate(h, structures::h_lie_algebra()), structures::h_lie_algebra()));
  });
}

TEST_CASE("torsion-free examples") {
  HJet constant;
  constant.h = MatN::Identity(4, 4) * 2.0;
  constant.dh.assign(4, MatN::Zero(4, 4));
  CHECK(torsion_residual(constant, tensor::Subspace::empty(4)).norm == 0.0);

  for_all(100, [](Gen& g) {
    CHECK(torsion_residual(random_h_valued(g), structures::h_lie_algebra()).norm <= 1e-10);
    const HJet iso = scalar_jet(g.real(-2, 2), {g.real(-2, 2), g.real(-2, 2)}, 2);
    CHECK(torsion_residual(iso, tensor::Subspace(2, {so2()})).is_torsion_free());
  });
}

TEST_CASE("torsion is detected") {
  // A conformal scaling is not compatible with the trivial algebra.
  const HJet iso = scalar_jet(0.3, {1.0, 0.0}, 2);
  const auto r = torsion_residual(iso, tensor::Subspace::empty(2));
  CHECK(r.norm > 0.5);
  CHECK_FALSE(r.is_torsion_free());
  CHECK_THROWS_AS(recover_connection(iso, tensor::Subspace::empty(2)), TorsionError);
}

TEST_CASE("recovered connections satisfy the structure equation") {
  HJet id;
  id.h = MatN::Identity(3, 3);
  id.dh.assign(3, MatN::Zero(3, 3));
  CHECK(recover_connection(id, tensor::Subspace::full(3)).max_abs() == 0.0);

  for_all(50, [](Gen& g) {
    const int n = g.integer(2, 4);
    const HJet j = random_jet(g, n);
    const auto full = tensor::Subspace::full(n);
    const auto alpha = recover_connection(j, full);
    CHECK(connection_defect(j, alpha) <= 1e-9);

    const HJet hj = random_h_valued(g);
    const auto a2 = recover_connection(hj, structures::h_lie_algebra());
    CHECK(connection_defect(hj, a2) <= 1e-9);
    for (const auto& a : a2.components()) CHECK(structures::h_lie_algebra().contains(a, 1e-8));
  });
}

TEST_CASE("torsion status is unchanged by a constant left factor from G") {
  for_all(30, [](Gen& g) {
    const HJet hj = random_h_valued(g);
    const auto h_alg = structures::h_lie_algebra();
    const auto v = g.quad();
    const MatN g0 = structures::H_matrix(v[0], v[1], v[2], v[3]);
    HJet moved = hj;
    moved.h = g0 * hj.h;
    for (auto& d : moved.dh) d = g0 * d;
    CHECK(torsion_residual(moved, h_alg).is_torsion_free() == torsion_residual(hj, h_alg).is_torsion_free());

    // Generic jets with a small algebra have torsion before and after.
    const HJet r = random_jet(g, 4);
    HJet rm = r;
    rm.h = g0 * r.h;
    for (auto& d : rm.dh) d = g0 * d;
    CHECK(torsion_residual(r, h_alg).is_torsion_free() == torsion_residual(rm, h_alg).is_torsion_free());
  });
}

TEST_CASE("bundle JSON") {
  const nlohmann::json ok{{"h", {{1, 0}, {0, 1}}},
                          {"dh", {{{0.5, 0}, {0, 0.5}}, {{0, 0}, {0, 0}}}},
                          {"g_basis", {{{0, -1}, {1, 0}}}}};
  const auto b = spencer_bundle_from_json(ok);
  CHECK(b.g.dim() == 1);
  CHECK(torsion_residual(b.jet, b.g).is_torsion_free());
  CHECK(matrix_from_json(matrix_to_json(b.jet.dh[0])) == b.jet.dh[0]);

  nlohmann::json short_dh = ok;
  short_dh["dh"].erase(1);
  CHECK_THROWS_AS(spencer_bundle_from_json(short_dh), UsageError);
  nlohmann::json dependent = ok;
  dependent["g_basis"].push_back({{0, -2}, {2, 0}});
  CHECK_THROWS_AS(spencer_bundle_from_json(dependent), UsageError);
  CHECK_THROWS_AS(spencer_bundle_from_json({{"h", 1}}), UsageError);
}
