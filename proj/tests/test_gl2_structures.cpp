#include "gl2/errors.hpp"
#include "gl2/gl2_structures.hpp"
#include "support.hpp"

#include <boost/rational.hpp>

#include <unsupported/Eigen/MatrixFunctions>

using namespace gl2;
using namespace gl2::structures;
using gl2::testing::for_all;
using gl2::testing::Gen;
using gl2::testing::max_abs;
using Q = boost::rational<long long>;

TEST_CASE("discriminant of a cubic with known roots") {
  for_all(50, [](Gen& g) {
    // (s - r1 t)(s - r2 t)(s - r3 t): Disc = prod_{i<j} (ri - rj)^2.
    const double r1 = g.real(), r2 = g.real(), r3 = g.real();
    const BinaryCubic f{{1.0, -(r1 + r2 + r3), r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3}};
    const double expect = std::pow((r1 - r2) * (r1 - r3) * (r2 - r3), 2);
    CHECK(discriminant(f) == doctest::Approx(expect).epsilon(1e-9).scale(1.0));
  });
  CHECK(discriminant(Q(1), Q(0), Q(0), Q(0)) == Q(0));
  CHECK(discriminant(Q(0), Q(1), Q(1), Q(0)) == Q(1));
}

TEST_CASE("cone and twisted cubic") {
  CHECK(cone_point(1, 0) == Vec4(1, 0, 0, 0));
  CHECK(cone_point(0, 1) == Vec4(0, 0, 0, 1));
  CHECK(cone_point(1, 1) == Vec4(1, 3, 3, 1));
  CHECK(twisted_cubic_eval(8, 4, 2, 1) == std::array<double, 3>{0, 0, 0});
  CHECK(twisted_cubic_eval(1, 1, 1, 1) == std::array<double, 3>{0, 0, 0});
  CHECK(twisted_cubic_eval(1, 3, 3, 1)[0] == -6.0);
  CHECK(cone_equations(cone_point(1, 1)) == std::array<double, 3>{0, 0, 0});
}

TEST_CASE("sym3 action examples") {
  CHECK(max_abs(sym3_action(Mat2::Identity()) - Mat4::Identity()) == 0.0);
  const double l = 2.0, m = -0.5;
  const Mat4 d = sym3_action(Eigen::DiagonalMatrix<double, 2>(l, m).toDenseMatrix());
  const Eigen::Vector4d expect(std::pow(l, -3), std::pow(l, -2) / m, 1.0 / (l * m * m), std::pow(m, -3));
  CHECK(max_abs(Mat4(d) - Mat4(expect.asDiagonal())) <= 1e-14);
  CHECK_THROWS_AS(sym3_action(Mat2::Zero()), SingularMatrixError);
}

TEST_CASE("sym3 action is a homomorphism and preserves the cone") {
  for_all(100, [](Gen& g) {
    const Mat2 a = g.gl2(), b = g.gl2();
    const Mat4 lhs = sym3_action(a * b), rhs = sym3_action(a) * sym3_action(b);
    CHECK(max_abs(lhs - rhs) <= 1e-10 * std::max(1.0, max_abs(rhs)));
    const Vec4 v = sym3_action(a) * cone_point(g.real(), g.real());
    for (double e : cone_equations(v)) CHECK(std::abs(e) <= 1e-9 * std::max(1.0, v.squaredNorm()));
  });
}

TEST_CASE("differential matches the action to first order") {
  const double eps = 1e-6;
  for (int k = 0; k < 4; ++k) {
    Mat2 e = Mat2::Zero();
    e(k / 2, k % 2) = 1.0;
    const Mat4 fd = (sym3_action((eps * e).exp()) - sym3_action((-eps * e).exp())) / (2 * eps);
    CHECK(max_abs(fd - sym3_differential(e)) <= 1e-8);
  }
  CHECK(max_abs(sym3_differential(Mat2::Identity()) + 3.0 * Mat4::Identity()) == 0.0);
}

TEST_CASE("gl(2) image is a 4-dimensional Lie subalgebra") {
  const auto basis = gl2_lie_algebra_basis();
  const tensor::Subspace g = gl2_lie_algebra();
  CHECK(g.dim() == 4);
  for (const auto& x : basis)
    for (const auto& y : basis) CHECK(g.contains(x * y - y * x, 1e-12));
}

TEST_CASE("group H") {
  CHECK(max_abs(H_matrix(0, 0, 0, 0) - Mat4::Identity()) == 0.0);
  CHECK(h_lie_algebra().dim() == 4);
  CHECK_FALSE(h_parameters(Mat4::Ones()).has_value());
  for_all(50, [](Gen& g) {
    const auto a = g.quad(), b = g.quad();
    const Mat4 ha = H_matrix(a[0], a[1], a[2], a[3]);
    const auto prod = h_parameters(ha * H_matrix(b[0], b[1], b[2], b[3]), 1e-14);
    REQUIRE(prod.has_value());
    CHECK((*prod)[0] == doctest::Approx(a[0] + b[0]));
    const auto inv = h_parameters(ha.inverse(), 1e-12);
    REQUIRE(inv.has_value());
    CHECK((*inv)[0] == doctest::Approx(-a[0]));
  });
}

TEST_CASE("Heisenberg embedding") {
  CHECK(max_abs(heisenberg_embed(0, 0, 0) - Mat4::Identity()) == 0.0);
  for_all(50, [](Gen& g) {
    const double a1 = g.real(), b1 = g.real(), c1 = g.real(), a2 = g.real(), b2 = g.real(), c2 = g.real();
    const Mat4 lhs = heisenberg_embed(a1, b1, c1) * heisenberg_embed(a2, b2, c2);
    const Mat4 rhs = heisenberg_embed(a1 + a2, b1 + b2, c1 + c2 + a1 * b2);
    CHECK(max_abs(lhs - rhs) <= 1e-12);
    const auto p = h_parameters(heisenberg_embed(a1, b1, c1));
    REQUIRE(p.has_value());
    CHECK((*p)[0] == a1);
    CHECK((*p)[2] == doctest::Approx(0.5 * a1 * a1));
  });
}

TEST_CASE("coframe from alpha") {
  const auto zero = h_from_alpha({});
  CHECK(max_abs(zero.h - Mat4::Identity()) == 0.0);
  const auto one = h_from_alpha({1, 0, 0, 0});
  CHECK(one.abcd == Values4{-1, 1, 1, -1});
  CHECK(max_abs(one.h - H_matrix(-1, 1, 1, -1)) == 0.0);
  const Mat4 v1 = framing_from_alpha({1, 0, 0, 0});
  CHECK(v1.col(1) == Vec4(1, 1, 0, 0));
  CHECK(v1.col(3) == Vec4(0, 0, 1, 1));
  for_all(100, [](Gen& g) {
    const FrameCoefficients f{g.real(), g.real(), g.real(), g.real()};
    const auto h = h_from_alpha(f);
    CHECK(max_abs(h.h - H_matrix(h.abcd[0], h.abcd[1], h.abcd[2], h.abcd[3])) <= 1e-12);
    CHECK(max_abs(h.h * framing_from_alpha(f) - Mat4::Identity()) <= 1e-12);
  });
  // Exact substitution identity over the rationals.
  const auto q = h_parameters_from_alpha(Q(1, 3), Q(-2, 5), Q(7, 2), Q(1));
  CHECK(q[1] == Q(1, 9) + Q(2, 5));
  CHECK(q[3] == Q(1, 3) * (Q(7, 2) - Q(2, 5)) - Q(1, 27) - Q(1));
}

TEST_CASE("fk coframe") {
  const auto deficient = fk_coframe({1, 1, 1, 1}, {0, 0, 0, 0});
  CHECK(deficient.rank_deficient);
  CHECK(deficient.h.row(0) == Eigen::RowVector4d(1, 1, 1, 1));
  CHECK(max_abs(deficient.h.bottomRows(3)) == 0.0);
  const auto ones = fk_coframe({1, 1, 1, 1}, {1, 1, 1, 1});
  CHECK(ones.rank == 1);
  CHECK(max_abs(ones.h - Mat4::Ones()) <= 1e-15);
  Gen g(5);
  const auto generic = fk_coframe(g.quad(0.5, 2), g.quad(-2, 2));
  CHECK(generic.h.allFinite());
  // Entry (1, 0) is (a2 a3 b1 + a1 a3 b2 + a1 a2 b3) / 3 with a, b 1-based.
  const auto x = fk_coframe({2, 3, 5, 7}, {11, 13, 17, 19});
  CHECK(x.h(1, 0) == doctest::Approx((5 * 7 * 13 + 3 * 7 * 17 + 3 * 5 * 19) / 3.0));
  CHECK(x.h(0, 0) == 3 * 5 * 7);
  CHECK(x.h(3, 0) == 13 * 17 * 19);
}

TEST_CASE("ODE correspondence on exact rationals") {
  F3Jet<Q> zero;
  const auto z = ode_correspondence(zero);
  for (const Q& v : z.raw) CHECK(v == Q(0));
  for (const Q& v : z.abcd) CHECK(v == Q(0));

  F3Jet<Q> lin;
  lin.set("2", Q(1));
  const auto l = ode_correspondence(lin);
  CHECK(l.raw == std::array<Q, 4>{Q(0), Q(7, 20), Q(3, 10), Q(0)});
  CHECK(l.rescaled == std::array<Q, 4>{Q(0), Q(7, 15), Q(3, 5), Q(0)});

  // F = x3^2 at x3 = 1: d3 F = 2 so alpha = 2.
  F3Jet<Q> sq;
  sq.point = {Q(0), Q(0), Q(0), Q(1)};
  sq.set("", Q(1));
  sq.set("3", Q(2));
  sq.set("33", Q(2));
  CHECK(ode_correspondence(sq).raw[0] == Q(2));

  F3Jet<Q> short_jet;
  short_jet.order = 2;
  CHECK_THROWS_AS(ode_correspondence(short_jet), UsageError);
  CHECK_THROWS_AS(F3Jet<Q>::parse_key("x"), UsageError);
  F3Jet<Q> deep;
  deep.set("0123", Q(1));
  CHECK_THROWS_AS(ode_correspondence(deep), UsageError);
}

TEST_CASE("ODE correspondence agrees between doubles and rationals") {
  for_all(20, [](Gen& g) {
    F3Jet<Q> q;
    F3Jet<double> d;
    for (const char* key : {"", "y", "0", "1", "2", "3", "33", "23", "y3", "03", "333", "233", "22", "13"}) {
      const int num = g.integer(-4, 4), den = g.integer(1, 3);
      q.set(key, Q(num, den));
      d.set(key, double(num) / den);
    }
    const auto a = ode_correspondence(q);
    const auto b = ode_correspondence(d);
    for (std::size_t i = 0; i < 4; ++i)
      CHECK(b.raw[i] == doctest::Approx(boost::rational_cast<double>(a.raw[i])).epsilon(1e-12));
  });
}
