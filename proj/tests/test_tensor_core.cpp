#include "gl2/errors.hpp"
#include "gl2/tensor_core.hpp"
#include "support.hpp"

#include <algorithm>

#include <cmath>

using namespace gl2;
using namespace gl2::tensor;
using gl2::testing::for_all;
using gl2::testing::Gen;

namespace {

ConnectionValued random_form(Gen& g, int n) {
  std::vector<MatN> psi;
  for (int i = 0; i < n; ++i) psi.push_back(g.matrix(n, n));
  return ConnectionValued(psi);
}

// V* (x) A element with random coefficients.
ConnectionValued random_in(Gen& g, const Subspace& a) {
  const int n = a.ambient();
  std::vector<MatN> psi(static_cast<std::size_t>(n), MatN::Zero(n, n));
  for (auto& p : psi)
    for (const auto& b : a.basis()) p += g.real() * b;
  return ConnectionValued(psi);
}

Subspace random_subspace(Gen& g, int n, int dim) {
  std::vector<MatN> basis;
  for (int r = 0; r < dim; ++r) basis.push_back(g.matrix(n, n));
  return Subspace(n, basis);
}

}  // namespace

TEST_CASE("skew-symmetrisation, n = 2 worked instance") {
  MatN p0(2, 2);
  p0 << 0, 1, 0, 0;
  const TorsionTensor t = skew_symmetrize(ConnectionValued({p0, MatN::Zero(2, 2)}));
  CHECK(t.at(0, 0, 1) == 1.0);
  CHECK(t.at(1, 0, 1) == 0.0);
  CHECK(t.at(0, 1, 0) == -1.0);
}

TEST_CASE("skew-symmetrisation matches the component formula") {
  for_all(50, [](Gen& g) {
    const int n = g.integer(2, 5);
    const ConnectionValued psi = random_form(g, n);
    const TorsionTensor t = skew_symmetrize(psi);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(t.at(k, i, j) == doctest::Approx(psi[i](k, j) - psi[j](k, i)).epsilon(1e-14));
  });
}

TEST_CASE("skew-symmetrisation is linear") {
  for_all(50, [](Gen& g) {
    const int n = g.integer(2, 4);
    const auto a = random_form(g, n), b = random_form(g, n);
    const double s = g.real(-3, 3);
    const TorsionTensor lhs = skew_symmetrize(s * a + b);
    const TorsionTensor rhs = s * skew_symmetrize(a) + skew_symmetrize(b);
    CHECK((lhs - rhs).max_abs() <= 1e-14);
  });
}

TEST_CASE("zero form maps to zero") {
  CHECK(skew_symmetrize(ConnectionValued::zero(4)).max_abs() == 0.0);
}

TEST_CASE("torsion tensor storage is antisymmetric") {
  TorsionTensor t(3);
  t.set(2, 1, 0, 5.0);
  CHECK(t.at(2, 0, 1) == -5.0);
  CHECK(t.at(2, 1, 0) == 5.0);
  CHECK(t.at(2, 1, 1) == 0.0);
  CHECK_THROWS_AS(t.set(0, 1, 1, 1.0), StructuralError);
  CHECK(TorsionTensor::size_for(4) == 24);
  CHECK(TorsionTensor::pair_index(4, 2, 3) == 5);
}

TEST_CASE("delta image ranks") {
  CHECK(delta_image_basis(Subspace::empty(3)).rank == 0);
  MatN j(2, 2);
  j << 0, -1, 1, 0;
  const auto so2 = delta_image_basis(Subspace(2, {j}));
  CHECK(so2.spanning.size() == 2);
  CHECK(so2.rank == 2);
  for (int n = 2; n <= 4; ++n) CHECK(delta_image_basis(Subspace::full(n)).rank == n * n * (n - 1) / 2);
}

TEST_CASE("project_residual") {
  const auto image = delta_image_basis(Subspace::full(3));
  CHECK(project_residual(TorsionTensor(3), image.reduced).residual_norm == 0.0);
  CHECK(project_residual(image.spanning.front(), image.reduced).residual_norm <= 1e-12);
  TorsionTensor unit(3);
  unit.set(1, 0, 2, 1.0);
  const auto p = project_residual(unit, {});
  CHECK(p.residual_norm == doctest::Approx(1.0));
  CHECK((p.residual - unit).max_abs() == 0.0);
}

TEST_CASE("delta of V* (x) A lies in the image of A") {
  for_all(40, [](Gen& g) {
    const int n = g.integer(2, 4);
    const Subspace a = random_subspace(g, n, g.integer(1, 4));
    const auto image = delta_image_basis(a);
    const TorsionTensor tau = skew_symmetrize(random_in(g, a));
    CHECK(project_residual(tau, image.reduced).residual_norm <= 1e-12 * (1.0 + tau.norm()));
  });
}

TEST_CASE("solve_in_image round trip") {
  const Subspace full = Subspace::full(3);
  const ConnectionValued zero = solve_in_image(TorsionTensor(3), full);
  CHECK(zero.max_abs() == 0.0);
  for_all(40, [](Gen& g) {
    const int n = g.integer(2, 4);
    const Subspace a = random_subspace(g, n, g.integer(1, std::min(5, n * n)));
    const TorsionTensor tau = skew_symmetrize(random_in(g, a));
    const ConnectionValued beta = solve_in_image(tau, a);
    CHECK((skew_symmetrize(beta) - tau).max_abs() <= 1e-10);
    for (const auto& b : beta.components()) CHECK(a.contains(b, 1e-9));
  });
}

TEST_CASE("solve_in_image rejects tensors outside the image") {
  TorsionTensor tau(3);
  tau.set(0, 1, 2, 1.0);
  CHECK_THROWS_AS(solve_in_image(tau, Subspace::empty(3)), NotInImageError);
}

TEST_CASE("subspace validation") {
  const MatN a = MatN::Identity(2, 2);
  CHECK_THROWS_AS(Subspace(2, {a, 2.0 * a}), StructuralError);
  CHECK_THROWS_AS(Subspace(2, {a, MatN::Identity(3, 3)}), StructuralError);
  Gen g(7);
  const Subspace s = random_subspace(g, 3, 3);
  CHECK(same_span(s, s.orthonormalized()));
  CHECK(s.contains(s.basis()[0] - 2.0 * s.basis()[2]));
  CHECK_FALSE(s.contains(g.matrix(3, 3)));
}

TEST_CASE("checked inverse reports singular matrices") {
  MatN m(2, 2);
  m << 1, 2, 2, 4;
  CHECK_FALSE(condition_report(m).invertible);
  CHECK_THROWS_AS(checked_inverse(m, "test"), SingularMatrixError);
  const MatN ok = MatN::Identity(3, 3) * 2.0;
  CHECK((checked_inverse(ok, "test") * ok - MatN::Identity(3, 3)).norm() <= 1e-15);
  CHECK(condition_report(ok).condition == doctest::Approx(1.0));
}

TEST_CASE("principal angles between lines, including tiny ones") {
  for (double theta : {0.7, 1e-3, 1e-9}) {
    MatN a(2, 1), b(2, 1);
    a << 1, 0;
    b << std::cos(theta), std::sin(theta);
    CHECK(subspace_distance(a, b) == doctest::Approx(theta).epsilon(1e-6));
  }
  MatN a(3, 1), b(3, 2);
  a << 1, 0, 0;
  b << 1, 0, 0, 1, 0, 0;
  CHECK(subspace_distance(a, b) == doctest::Approx(M_PI / 2));
}

TEST_CASE("null space, rank and minimum-norm solve") {
  MatN m(2, 3);
  m << 1, 1, 0, 0, 0, 1;
  CHECK(numerical_rank(m) == 2);
  const MatN n = null_space(m);
  REQUIRE(n.cols() == 1);
  CHECK((m * n).norm() <= 1e-15);
  MatN row(1, 2);
  row << 1, 1;
  VecN rhs(1);
  rhs << 2;
  const VecN x = min_norm_solve(row, rhs);
  CHECK(x(0) == doctest::Approx(1.0));
  CHECK(x(1) == doctest::Approx(1.0));
  CHECK(column_basis(m).cols() == 2);
}
