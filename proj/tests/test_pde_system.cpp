#include "gl2/errors.hpp"
#include "gl2/gl2_structures.hpp"
#include "gl2/pde_system.hpp"
#include "support.hpp"

using namespace gl2;
using namespace gl2::pde;
using gl2::testing::for_all;
using gl2::testing::Gen;
using gl2::testing::max_abs;
using jets::kA;
using jets::kB;
using jets::kC;
using jets::kD;

namespace {

// Frame derivatives and the four equations assembled by matrix algebra:
// Vf[k][j] = grad(field k) . (column j of the framing).
std::array<double, 4> oracle_residuals(const FieldJet& j) {
  const Mat4 v = framing(j.values());
  double Vf[4][4];
  for (int k = 0; k < 4; ++k) {
    const Eigen::RowVector4d g(j.f[k].grad[0], j.f[k].grad[1], j.f[k].grad[2], j.f[k].grad[3]);
    for (int c = 0; c < 4; ++c) Vf[k][c] = g * v.col(c);
  }
  const double A = j.f[0].value, C = j.f[2].value;
  const auto* VA = Vf[0];
  const auto* VB = Vf[1];
  const auto* VC = Vf[2];
  const auto* VD = Vf[3];
  return {VD[2] - VB[3] - A * VB[2] - C * VA[2] + A * VA[3] + A * A * VA[2],
          2 * VD[1] - VC[2] - 2 * A * VB[1] - VA[3] + A * VA[2] + 2 * A * A * VA[1] - 2 * C * VA[1],
          VD[0] - 2 * VC[1] + 3 * VB[1] - A * VB[0] - 2 * VA[2] - A * VA[1] - C * VA[0] + A * A * VA[0],
          VC[0] - 2 * VB[0] + VA[1] + A * VA[0]};
}

// Framing as a function of the point, from a field source.
using FrameAt = std::function<Mat4(const jets::Point4&)>;

// [V_a, V_b] by central differences of the framing coefficients.
Eigen::Vector4d fd_bracket(const FrameAt& frame, const jets::Point4& x, int a, int b) {
  const double h = 1e-5;
  std::array<Mat4, 4> d;
  for (int l = 0; l < 4; ++l) {
    jets::Point4 p = x, m = x;
    p[static_cast<std::size_t>(l)] += h;
    m[static_cast<std::size_t>(l)] -= h;
    d[static_cast<std::size_t>(l)] = (frame(p) - frame(m)) / (2 * h);
  }
  const Mat4 v = frame(x);
  Eigen::Vector4d out = Eigen::Vector4d::Zero();
  for (int l = 0; l < 4; ++l)
    out += v(l, a) * d[static_cast<std::size_t>(l)].col(b) - v(l, b) * d[static_cast<std::size_t>(l)].col(a);
  return out;
}

const std::array<double, 5> kLambdas{-2.0, -1.0, 0.0, 1.0, 2.0};

}  // namespace

TEST_CASE("framing examples and duality") {
  CHECK(max_abs(framing({0, 0, 0, 0}) - Mat4::Identity()) == 0.0);
  CHECK(framing({1, 0, 0, 0}).col(3) == Eigen::Vector4d(-1, 1, -1, 1));
  for_all(100, [](Gen& g) {
    const auto v = g.quad();
    CHECK(max_abs(structures::H_matrix(v[0], v[1], v[2], v[3]) * framing(v) - Mat4::Identity()) <= 1e-12);
  });
}

TEST_CASE("residual examples") {
  CHECK(residuals(jets::constants_fixture({1, 2, 3, 4})->evaluate({0.1, 0.2, 0.3, 0.4})).max_abs() == 0.0);
  for_all(20, [](Gen& g) {
    CHECK(residuals(jets::a_of_x0_fixture(g.quad())->evaluate(g.quad())).max_abs() <= 1e-12);
    CHECK(residuals(jets::d_of_x3_fixture(g.quad())->evaluate(g.quad())).max_abs() <= 1e-12);
  });
  const auto r = residuals(jets::b_of_x3_fixture({0, 1, 0, 0})->evaluate({0, 0, 0, 0}));
  CHECK(r.r == std::array<double, 4>{-1, 0, 0, 0});
  FieldJet values_only;
  values_only.order = 0;
  CHECK_THROWS_AS(residuals(values_only), UsageError);
}

TEST_CASE("residuals match the matrix-algebra oracle") {
  for_all(100, [](Gen& g) {
    const FieldJet j = g.jet();
    const auto r = residuals(j).r;
    const auto o = oracle_residuals(j);
    for (std::size_t k = 0; k < 4; ++k) CHECK(r[k] == doctest::Approx(o[k]).epsilon(1e-12).scale(1.0));
  });
}

TEST_CASE("residuals are linear in the first derivatives") {
  for_all(50, [](Gen& g) {
    const FieldJet j = g.jet();
    Eigen::VectorXd d(16);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i) d(k * 4 + i) = j.f[static_cast<std::size_t>(k)].grad[static_cast<std::size_t>(i)];
    const Eigen::VectorXd lin = residual_map(j.values()) * d;
    const auto r = residuals(j).r;
    for (int k = 0; k < 4; ++k) CHECK(lin(k) == doctest::Approx(r[static_cast<std::size_t>(k)]).epsilon(1e-12).scale(1.0));
  });
}

TEST_CASE("structure constants, worked instance") {
  const StructureConstants c = structure_constants(jets::a_of_x0_fixture({0, 0, 1, 0})->evaluate({1, 0, 0, 0}));
  CHECK(c(0, 1, 0) == doctest::Approx(-2.0));
  CHECK(c(1, 0, 0) == doctest::Approx(2.0));
  for (int k = 1; k < 4; ++k) CHECK(c(0, 1, k) == 0.0);
  CHECK(structure_constants(jets::constants_fixture({1, 2, 3, 4})->evaluate({})).max_abs() == 0.0);
  CHECK(c_equations(StructureConstants{}) == std::array<double, 4>{0, 0, 0, 0});
}

TEST_CASE("structure constants match finite-difference brackets") {
  // Fields linear in x so the framing is an explicit function of the point.
  for_all(20, [](Gen& g) {
    const auto v0 = g.quad();
    std::array<std::array<double, 4>, 4> grad;
    for (auto& r : grad) r = g.quad();
    const FrameAt frame = [&](const jets::Point4& x) {
      jets::Values4 v;
      for (std::size_t k = 0; k < 4; ++k) {
        v[k] = v0[k];
        for (std::size_t i = 0; i < 4; ++i) v[k] += grad[k][i] * x[i];
      }
      return framing(v);
    };
    FieldJet j;
    j.order = 1;
    for (std::size_t k = 0; k < 4; ++k) {
      j.f[k].value = v0[k];
      j.f[k].grad = grad[k];
    }
    const StructureConstants c = structure_constants(j);
    const Mat4 v = frame({});
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) {
        const Eigen::Vector4d coeff = v.lu().solve(fd_bracket(frame, {}, a, b));
        for (int k = 0; k < 4; ++k) CHECK(c(a, b, k) == doctest::Approx(coeff(k)).epsilon(1e-6).scale(1.0));
      }
  });
}

TEST_CASE("exact fixtures satisfy every formulation") {
  for_all(30, [](Gen& g) {
    for (const auto& f : {jets::a_of_x0_fixture(g.quad()), jets::d_of_x3_fixture(g.quad()),
                          jets::constants_fixture(g.quad())}) {
      const FieldJet j = f->evaluate(g.quad());
      for (double e : c_equations(structure_constants(j))) CHECK(std::abs(e) <= 1e-12);
      CHECK(bracket_span_check(j, kLambdas) <= 1e-10);
      const auto b = spencer_bridge(j);
      CHECK(b.spencer_norm <= 1e-10);
      CHECK(b.residual_norm <= 1e-12);
    }
  });
}

TEST_CASE("negative control is seen by every formulation") {
  const FieldJet j = jets::b_of_x3_fixture({0, 1, 0, 0})->evaluate({0, 0, 0, 0});
  const auto b = spencer_bridge(j);
  CHECK(b.spencer_norm > 1e-3);
  CHECK(b.residual_norm > 1e-3);
  CHECK(bracket_span_check(j, kLambdas) > 1e-3);
  double c = 0.0;
  for (double e : c_equations(structure_constants(j))) c = std::max(c, std::abs(e));
  CHECK(c > 1e-3);
}

TEST_CASE("bracket defect grows continuously from zero") {
  const auto base = std::dynamic_pointer_cast<const jets::SeparableCubicFields>(jets::a_of_x0_fixture({0, 0.5, 1, 0}));
  double last = 0.0;
  for (double eps : {0.0, 1e-6, 1e-4, 1e-2}) {
    const FieldJet j = jets::perturb_b(*base, eps, {0, 1, 0, 0})->evaluate({0.3, 0.1, -0.2, 0.4});
    const double d = bracket_span_check(j, kLambdas);
    if (eps == 0.0) CHECK(d <= 1e-12);
    else CHECK(d > last);
    if (eps > 0.0) CHECK(d <= 100.0 * eps);
    last = d;
  }
}

TEST_CASE("zero sets coincide: residuals, c-equations and Spencer") {
  for_all(25, [](Gen& g) {
    const auto k = compare_kernels(g.quad());
    CHECK(k.dim_residual == 12);
    CHECK(k.dim_c_equations == 12);
    CHECK(k.dim_spencer == 12);
    CHECK(k.worst_angle() <= 1e-8);
  });
}

TEST_CASE("principal symbol and the discriminant") {
  CHECK(principal_symbol({0, 0, 0, 0}, {1, 0, 0, 0}).determinant() == 0.0);
  for_all(10, [](Gen& g) {
    const auto v = g.quad();
    std::vector<double> kappa;
    for (int s = 0; s < 20; ++s) {
      const Covector xi = g.quad();
      const Mat4 sigma = principal_symbol(v, xi);
      // Entries are linear in xi.
      const Covector xi2 = g.quad();
      Covector sum;
      for (std::size_t i = 0; i < 4; ++i) sum[i] = 2.0 * xi[i] + xi2[i];
      CHECK(max_abs(principal_symbol(v, sum) - 2.0 * sigma - principal_symbol(v, xi2)) <= 1e-13);
      kappa.push_back(sigma.determinant() / structures::discriminant(symbol_cubic(v, xi)));
    }
    for (double k : kappa) CHECK(k == doctest::Approx(kappa.front()).epsilon(1e-8));
  });
}

TEST_CASE("symbol cubic pairs xi with the weighted frame") {
  const auto f = symbol_cubic({0, 0, 0, 0}, {1, 2, 3, 4});
  CHECK(f.p == std::array<double, 4>{1, 6, 9, 4});
}

TEST_CASE("h jet and Spencer bridge on constants") {
  const FieldJet j = jets::constants_fixture({0.5, -1, 2, 0.25})->evaluate({});
  const auto h = h_jet(j);
  CHECK(max_abs(h.h - structures::H_matrix(0.5, -1, 2, 0.25)) == 0.0);
  for (const auto& d : h.dh) CHECK(max_abs(d) == 0.0);
  const auto b = spencer_bridge(j);
  CHECK(b.spencer_norm == 0.0);
  CHECK(b.residual_norm == 0.0);
}
