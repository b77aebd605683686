#include "gl2/acceptance.hpp"

#include "gl2/errors.hpp"
#include "gl2/gl2_structures.hpp"
#include "gl2/hflat_engine.hpp"
#include "gl2/jet_fields.hpp"
#include "gl2/kernels/batch.hpp"
#include "gl2/lax_pair.hpp"
#include "gl2/pde_system.hpp"
#include "gl2/taylor_solver.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

namespace gl2::acceptance {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

jets::Values4 random_values(Rng& rng) { return {uniform(rng), uniform(rng), uniform(rng), uniform(rng)}; }
jets::Cubic random_cubic(Rng& rng) { return {uniform(rng), uniform(rng), uniform(rng), uniform(rng)}; }

// Distinct substreams per criterion so that adding samples to one criterion
// leaves the others unchanged.
Rng stream(std::uint64_t seed, int id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id)};
  return Rng(seq);
}

Check at_most(std::string name, double v, double bound) { return {std::move(name), v, bound, Check::Kind::kAtMost}; }
Check at_least(std::string name, double v, double bound) { return {std::move(name), v, bound, Check::Kind::kAtLeast}; }
Check greater(std::string name, double v, double bound) { return {std::move(name), v, bound, Check::Kind::kGreater}; }
Check runtime(double seconds, double bound) {
  Check c{"runtime (s)", seconds, bound, Check::Kind::kAtMost};
  c.timing = true;
  return c;
}
Check flag(std::string name, bool ok) { return {std::move(name), ok ? 0.0 : 1.0, 0.0, Check::Kind::kAtMost}; }

// ---------------------------------------------------------------------------

CriterionResult formulation_equivalence(Rng& rng) {
  CriterionResult r{1, "formulation equivalence", {}, 0.0};
  double worst_c = 0.0, worst_s = 0.0;
  bool dims_ok = true;
  for (int i = 0; i < 20; ++i) {
    const auto k = pde::compare_kernels(random_values(rng));
    worst_c = std::max(worst_c, k.angle_residual_c);
    worst_s = std::max(worst_s, k.angle_residual_spencer);
    dims_ok = dims_ok && k.dim_residual == 12 && k.dim_c_equations == 12 && k.dim_spencer == 12;
  }
  r.checks.push_back(at_most("angle(residual, c-equations)", worst_c, 1e-8));
  r.checks.push_back(at_most("angle(residual, spencer)", worst_s, 1e-8));
  r.checks.push_back(flag("kernel dimensions all 12", dims_ok));
  return r;
}

CriterionResult exact_fixtures(Rng& rng) {
  CriterionResult r{2, "exact-solution fixtures", {}, 0.0};
  const std::vector<std::shared_ptr<const jets::AnalyticFields>> fixtures{
      jets::constants_fixture(random_values(rng)), jets::a_of_x0_fixture(random_cubic(rng)),
      jets::d_of_x3_fixture(random_cubic(rng))};
  static constexpr std::array<double, 5> kLambdas{-2.0, -1.0, 0.0, 1.0, 2.0};
  double res = 0.0, sp = 0.0, br = 0.0, comm = 0.0, backend_gap = 0.0;
  for (const auto& f : fixtures) {
    std::vector<jets::FieldJet> js;
    for (int i = 0; i < 50; ++i) {
      const jets::FieldJet j = f->evaluate(random_values(rng));
      js.push_back(j);
      res = std::max(res, pde::residuals(j).max_abs());
      sp = std::max(sp, pde::spencer_bridge(j).spencer_norm);
      br = std::max(br, pde::bracket_span_check(j, kLambdas));
      comm = std::max(comm, lax::commutator(j).max_abs_coeff());
    }
    // The batched kernels on the fastest backend must see the same zeros.
    const auto batch = kernels::JetBatch::from_jets(js);
    const auto b = kernels::best_backend();
    const auto rb = kernels::residuals_batch(batch, b);
    const auto cb = kernels::commutator_batch(batch, b);
    for (std::size_t i = 0; i < js.size(); ++i) {
      for (const auto& col : rb.r) res = std::max(res, std::abs(col[i]));
      comm = std::max(comm, cb.max_abs(i));
      const auto c = lax::commutator(js[i]);
      for (std::size_t k = 0; k < 5; ++k)
        for (int p = 0; p < 7; ++p)
          backend_gap = std::max(backend_gap, std::abs(cb.coeff[k][static_cast<std::size_t>(p)][i] - c.comp[k].coeff(p)));
    }
  }
  r.checks.push_back(at_most("residuals", res, 1e-12));
  r.checks.push_back(at_most("spencer residual", sp, 1e-10));
  r.checks.push_back(at_most("bracket-span defect", br, 1e-10));
  r.checks.push_back(at_most("lax commutator", comm, 1e-9));
  r.checks.push_back(at_most("batched vs pointwise commutator", backend_gap, 1e-12));
  return r;
}

CriterionResult isothermal(Rng& rng) {
  CriterionResult r{3, "isothermal coordinates (n = 2)", {}, 0.0};
  tensor::MatN j(2, 2);
  j << 0, -1, 1, 0;
  const tensor::Subspace so2(2, {j});
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double u = uniform(rng, -2.0, 2.0);
    hflat::HJet hj;
    hj.h = std::exp(u) * tensor::MatN::Identity(2, 2);
    for (int k = 0; k < 2; ++k) hj.dh.push_back(uniform(rng, -2.0, 2.0) * hj.h);
    worst = std::max(worst, hflat::torsion_residual(hj, so2).norm);
  }
  r.checks.push_back(at_most("torsion residual", worst, 1e-10));
  return r;
}

CriterionResult trivial_h(Rng& rng) {
  CriterionResult r{4, "H-valued maps with g = h", {}, 0.0};
  const tensor::Subspace h_alg = structures::h_lie_algebra();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto v = random_values(rng);
    hflat::HJet hj;
    hj.h = structures::H_matrix(v[0], v[1], v[2], v[3]);
    for (int k = 0; k < 4; ++k) {
      const auto d = random_values(rng);
      hj.dh.push_back(structures::H_matrix(d[0], d[1], d[2], d[3]) - Mat4::Identity());
    }
    worst = std::max(worst, hflat::torsion_residual(hj, h_alg).norm);
  }
  r.checks.push_back(at_most("torsion residual", worst, 1e-10));
  return r;
}

CriterionResult characteristic_variety(Rng& rng) {
  CriterionResult r{5, "characteristic variety", {}, 0.0};
  double spread = 0.0, dbl = 0.0, kappa_dev = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto v = random_values(rng);
    std::vector<double> kappas;
    for (int s = 0; s < 20; ++s) {
      const pde::Covector xi{uniform(rng), uniform(rng), uniform(rng), uniform(rng)};
      const double det = pde::principal_symbol(v, xi).determinant();
      kappas.push_back(det / structures::discriminant(pde::symbol_cubic(v, xi)));
    }
    const auto [lo, hi] = std::minmax_element(kappas.begin(), kappas.end());
    double mean = 0.0;
    for (double k : kappas) mean += k / static_cast<double>(kappas.size());
    spread = std::max(spread, (*hi - *lo) / std::abs(mean));
    kappa_dev = std::max(kappa_dev, std::abs(mean + 1.0 / 27.0));

    // (s - a t)^2 (s - b t) paired back through the frame.
    const Mat4 frame = pde::framing(v);
    for (int s = 0; s < 10; ++s) {
      const double a = uniform(rng), b = uniform(rng);
      const Eigen::RowVector4d cubic(1.0, -(2.0 * a + b), a * a + 2.0 * a * b, -a * a * b);
      const Eigen::RowVector4d p(cubic(0), cubic(1) / 3.0, cubic(2) / 3.0, cubic(3));
      const Eigen::RowVector4d x = p * frame.inverse();
      const pde::Covector xi{x(0), x(1), x(2), x(3)};
      const Mat4 sigma = pde::principal_symbol(v, xi);
      double scale = 1.0;
      for (int c = 0; c < 4; ++c) scale *= std::max(sigma.col(c).norm(), 1e-300);
      dbl = std::max(dbl, std::abs(sigma.determinant()) / scale);
    }
  }
  r.checks.push_back(at_most("relative spread of det/Disc", spread, 1e-8));
  r.checks.push_back(at_most("|det| / scale at double roots", dbl, 1e-8));
  r.checks.push_back(at_most("|kappa + 1/27|", kappa_dev, 1e-8));
  return r;
}

double rel_err(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff()); }

Mat2 random_gl2(Rng& rng) {
  for (;;) {
    Mat2 g;
    g << uniform(rng), uniform(rng), uniform(rng), uniform(rng);
    if (std::abs(g.determinant()) > 0.1) return g;
  }
}

CriterionResult group_theory(Rng& rng) {
  CriterionResult r{6, "group theory", {}, 0.0};
  double hom = 0.0, cone = 0.0, phi = 0.0, alpha = 0.0, duality = 0.0;
  bool closure_exact = true;
  std::uniform_int_distribution<int> small(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const Mat2 g1 = random_gl2(rng), g2 = random_gl2(rng);
    hom = std::max(hom, rel_err(structures::sym3_action(g1 * g2),
                                structures::sym3_action(g1) * structures::sym3_action(g2)));

    const double s = uniform(rng), t = uniform(rng);
    const auto e = structures::cone_equations(structures::sym3_action(g1) * structures::cone_point(s, t));
    for (double q : e) cone = std::max(cone, std::abs(q));

    // Small integers keep every product exact in binary floating point.
    const jets::Values4 a{double(small(rng)), double(small(rng)), double(small(rng)), double(small(rng))};
    const jets::Values4 b{double(small(rng)), double(small(rng)), double(small(rng)), double(small(rng))};
    const Mat4 ha = structures::H_matrix(a[0], a[1], a[2], a[3]);
    const Mat4 hb = structures::H_matrix(b[0], b[1], b[2], b[3]);
    const auto prod = structures::h_parameters(ha * hb, 0.0);
    const auto inv = structures::h_parameters(tensor::checked_inverse(ha, "H inverse"), 0.0);
    closure_exact = closure_exact && prod.has_value() && inv.has_value() &&
                    (ha * tensor::checked_inverse(ha, "H inverse")) == Mat4::Identity();

    // Heisenberg law on [[1, a, c], [0, 1, b], [0, 0, 1]].
    const double a1 = uniform(rng), b1 = uniform(rng), c1 = uniform(rng);
    const double a2 = uniform(rng), b2 = uniform(rng), c2 = uniform(rng);
    phi = std::max(phi, rel_err(structures::heisenberg_embed(a1, b1, c1) * structures::heisenberg_embed(a2, b2, c2),
                                structures::heisenberg_embed(a1 + a2, b1 + b2, c1 + c2 + a1 * b2)));

    const structures::FrameCoefficients f{uniform(rng), uniform(rng), uniform(rng), uniform(rng)};
    const auto hf = structures::h_from_alpha(f);
    alpha = std::max(alpha, rel_err(hf.h, structures::H_matrix(hf.abcd[0], hf.abcd[1], hf.abcd[2], hf.abcd[3])));

    const auto v = random_values(rng);
    duality = std::max(duality, rel_err(structures::H_matrix(v[0], v[1], v[2], v[3]) * pde::framing(v), Mat4::Identity()));
  }
  r.checks.push_back(at_most("sym3 homomorphism", hom, 1e-10));
  r.checks.push_back(at_most("cone preservation", cone, 1e-9));
  r.checks.push_back(flag("H closure and inverse exact", closure_exact));
  r.checks.push_back(at_most("phi homomorphism", phi, 1e-12));
  r.checks.push_back(at_most("h_from_alpha vs H_matrix", alpha, 1e-12));
  r.checks.push_back(at_most("duality h V = I", duality, 1e-12));
  return r;
}

CriterionResult taylor(Rng& rng) {
  CriterionResult r{7, "taylor prolongation", {}, 0.0};
  static constexpr std::array<double, 5> kLambdas{-2.0, -1.0, 0.0, 1.0, 2.0};
  double verify = 0.0, res = 0.0, sp = 0.0, br = 0.0, comm = 0.0, slowest = 0.0;
  for (int i = 0; i < 5; ++i) {
    const auto t0 = Clock::now();
    taylor::Seed raw;
    raw.values = random_values(rng);
    for (auto& g : raw.grad) g = random_values(rng);
    const auto p = taylor::prolong(taylor::project_seed(raw), 4);
    verify = std::max(verify, taylor::verify_series(p.series));
    const jets::FieldJet j = taylor::origin_jet(p.series);
    res = std::max(res, pde::residuals(j).max_abs());
    sp = std::max(sp, pde::spencer_bridge(j).spencer_norm);
    br = std::max(br, pde::bracket_span_check(j, kLambdas));
    comm = std::max(comm, lax::commutator(j).max_abs_coeff());
    slowest = std::max(slowest, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  r.checks.push_back(at_most("series residual through degree 3", verify, 1e-10));
  r.checks.push_back(at_most("origin residuals", res, 1e-12));
  r.checks.push_back(at_most("origin spencer residual", sp, 1e-10));
  r.checks.push_back(at_most("origin bracket-span defect", br, 1e-10));
  r.checks.push_back(at_most("origin lax commutator", comm, 1e-9));
  r.checks.push_back(runtime(slowest, 10.0));
  return r;
}

CriterionResult flow_commutation(Rng&) {
  CriterionResult r{8, "flow commutation", {}, 0.0};
  const auto f = jets::a_of_x0_fixture({0.0, 0.0, 1.0, 0.0});
  const lax::State5 start{0.7, -0.3, 0.2, 0.1, -0.8};
  const auto at_1e3 = lax::flow_trace(*f, start, 0.1, 0.1, 1e-3);
  const auto study = lax::flow_convergence(*f, start, 0.1, 0.1, {1e-2, 5e-3, 2.5e-3, 1.25e-3});
  r.checks.push_back(at_most("discrepancy at step 1e-3", at_1e3.discrepancy, 1e-8));
  r.checks.push_back(at_least("fitted order", study.fitted_order, 3.5));
  r.checks.push_back(at_least("smallest pairwise order",
                              *std::min_element(study.pairwise_orders.begin(), study.pairwise_orders.end()), 3.5));
  return r;
}

CriterionResult negative_control(Rng&) {
  CriterionResult r{9, "negative control B = x^3", {}, 0.0};
  const auto f = jets::b_of_x3_fixture({0.0, 1.0, 0.0, 0.0});
  const jets::FieldJet j = f->evaluate({0.0, 0.0, 0.0, 0.0});
  const auto res = pde::residuals(j);
  double dev = std::abs(res.r[0] + 1.0);
  for (int k = 1; k < 4; ++k) dev = std::max(dev, std::abs(res.r[static_cast<std::size_t>(k)]));
  static constexpr std::array<double, 5> kLambdas{-2.0, -1.0, 0.0, 1.0, 2.0};
  r.checks.push_back(at_most("|residual - (-1,0,0,0)|", dev, 1e-12));
  r.checks.push_back(greater("spencer residual", pde::spencer_bridge(j).spencer_norm, 1e-3));
  r.checks.push_back(greater("bracket-span defect", pde::bracket_span_check(j, kLambdas), 1e-3));
  r.checks.push_back(greater("lax commutator", lax::commutator(j).max_abs_coeff(), 1e-3));
  return r;
}

// Exact polynomials in (y, x0, x1, x2, x3) over the rationals; no truncation.
using Q = boost::rational<long long>;
using Mono = std::array<int, 5>;
using ExactPoly = std::map<Mono, Q>;

ExactPoly add(ExactPoly a, const ExactPoly& b, Q s = Q(1)) {
  for (const auto& [m, c] : b) {
    a[m] += s * c;
    if (a[m] == Q(0)) a.erase(m);
  }
  return a;
}

ExactPoly mul(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Mono m;
      for (int i = 0; i < 5; ++i) m[static_cast<std::size_t>(i)] = ma[static_cast<std::size_t>(i)] + mb[static_cast<std::size_t>(i)];
      out[m] += ca * cb;
      if (out[m] == Q(0)) out.erase(m);
    }
  return out;
}

ExactPoly diff(const ExactPoly& a, int var) {
  ExactPoly out;
  for (const auto& [key, c] : a) {
    Mono m = key;
    const int e = m[static_cast<std::size_t>(var)];
    if (e == 0) continue;
    --m[static_cast<std::size_t>(var)];
    out[m] += Q(e) * c;
  }
  return out;
}

ExactPoly var_poly(int var) {
  Mono m{};
  m[static_cast<std::size_t>(var)] = 1;
  return {{m, Q(1)}};
}

ExactPoly const_poly(Q c) { return c == Q(0) ? ExactPoly{} : ExactPoly{{Mono{}, c}}; }

Q at_origin(const ExactPoly& p) {
  const auto it = p.find(Mono{});
  return it == p.end() ? Q(0) : it->second;
}

// alpha..delta straight from the total-derivative formulas, at the origin.
std::array<Q, 4> ode_oracle(const ExactPoly& F) {
  auto X = [&](const ExactPoly& g) {
    ExactPoly out = diff(g, 0);
    for (int k = 1; k <= 3; ++k) out = add(out, mul(var_poly(k + 1), diff(g, k)));
    return add(out, mul(F, diff(g, 4)));
  };
  const ExactPoly F1 = diff(F, 2), F2 = diff(F, 3), F3 = diff(F, 4);
  const ExactPoly XF3 = X(F3);
  const ExactPoly K = add(add(const_poly(Q(0)), F2, Q(-1)),
                          add(mul(const_poly(Q(3, 2)), XF3), mul(F3, F3), Q(-3, 8)));
  const Q f1 = at_origin(F1), f2 = at_origin(F2), f3 = at_origin(F3);
  const Q xf3 = at_origin(XF3), xxf3 = at_origin(X(XF3)), k = at_origin(K), xk = at_origin(X(K)),
          xf2 = at_origin(X(F2));
  return {f3, Q(7, 20) * f2 - Q(3, 20) * xf3 + Q(9, 40) * f3 * f3, f2 + Q(7, 10) * k,
          f1 - Q(3, 10) * xk - xf2 + Q(21, 40) * k * f3 - Q(27, 16) * xf3 * f3 - Q(3, 4) * f2 * f3 +
              Q(3, 4) * xxf3 + Q(27, 64) * f3 * f3 * f3};
}

structures::F3Jet<Q> jet_of(const ExactPoly& F) {
  structures::F3Jet<Q> j;
  for (const auto& [m, c] : F) {
    Q factorial(1);
    for (int e : m)
      for (int q = 2; q <= e; ++q) factorial *= Q(q);
    j.partials[m] = c * factorial;
  }
  return j;
}

CriterionResult ode_correspondence(Rng& rng) {
  CriterionResult r{10, "ODE correspondence", {}, 0.0};
  const auto zero = structures::ode_correspondence(jet_of({}));
  bool zero_ok = true;
  for (const Q& q : zero.raw) zero_ok = zero_ok && q == Q(0);
  r.checks.push_back(flag("F = 0 gives zero structure", zero_ok));

  const ExactPoly x2 = var_poly(3);
  const auto lin = structures::ode_correspondence(jet_of(x2));
  const std::array<Q, 4> expected{Q(0), Q(7, 20), Q(3, 10), Q(0)};
  r.checks.push_back(flag("F = x2 gives (0, 7/20, 3/10, 0)", lin.raw == expected && ode_oracle(x2) == expected));

  // Random integer cubics against the untruncated evaluation.
  std::uniform_int_distribution<int> coef(-3, 3);
  int mismatches = 0;
  for (int trial = 0; trial < 20; ++trial) {
    ExactPoly F;
    const auto& table = *MonomialTable<5>::get(3);
    for (std::size_t m = 0; m < table.size(); ++m) {
      const int c = coef(rng);
      if (c != 0) F[table.exponent(m)] = Q(c);
    }
    if (structures::ode_correspondence(jet_of(F)).raw != ode_oracle(F)) ++mismatches;
  }
  r.checks.push_back(at_most("random cubic F mismatches", mismatches, 0.0));
  return r;
}

}  // namespace

bool Check::passed() const {
  if (!std::isfinite(value)) return false;
  switch (kind) {
    case Kind::kAtMost: return value <= bound;
    case Kind::kAtLeast: return value >= bound;
    case Kind::kGreater: return value > bound;
  }
  return false;
}

std::string Check::describe() const {
  if (timing) return name + (passed() ? " < " : " >= ") + sci(bound);
  const char* op = kind == Kind::kAtMost ? " <= " : kind == Kind::kAtLeast ? " >= " : " > ";
  return name + " " + sci(value) + (passed() ? op : " !") + (passed() ? "" : std::string(op + 1)) + sci(bound);
}

namespace {
// Larger is worse; > 1 means failing.
double badness(const Check& c) {
  if (!std::isfinite(c.value)) return HUGE_VAL;
  if (c.kind == Check::Kind::kAtMost) {
    if (c.bound == 0.0) return c.value > 0.0 ? HUGE_VAL : 0.0;
    return c.value / c.bound;
  }
  if (c.value <= 0.0) return HUGE_VAL;
  return c.bound / c.value;
}
}  // namespace

bool CriterionResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

const Check* CriterionResult::worst() const {
  const Check* w = nullptr;
  for (const auto& c : checks) {
    if (c.timing && c.passed()) continue;
    if (!w || (!c.passed() && w->passed()) || (c.passed() == w->passed() && badness(c) > badness(*w))) w = &c;
  }
  return w;
}

std::string CriterionResult::line() const {
  char head[96];
  std::snprintf(head, sizeof head, "criterion %2d %s  %-32s", id, passed() ? "PASS" : "FAIL", title.c_str());
  const Check* w = worst();
  return std::string(head) + (w ? "  [" + w->describe() + "]" : "");
}

CriterionResult run_criterion(int id, std::uint64_t seed) {
  using Fn = CriterionResult (*)(Rng&);
  static constexpr std::array<Fn, kCriteria> kFns{formulation_equivalence, exact_fixtures, isothermal, trivial_h,
                                                  characteristic_variety, group_theory, taylor, flow_commutation,
                                                  negative_control, ode_correspondence};
  if (id < 1 || id > kCriteria) throw UsageError("acceptance: no criterion " + std::to_string(id));
  Rng rng = stream(seed, id);
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    r = kFns[static_cast<std::size_t>(id - 1)](rng);
  } catch (const std::exception& e) {
    r = CriterionResult{id, "criterion " + std::to_string(id), {}, 0.0};
    r.checks.push_back(flag(std::string("threw: ") + e.what(), false));
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (id == 1 || id == 2) r.checks.push_back(runtime(r.seconds, 5.0));
  return r;
}

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

nlohmann::json to_json(const CriterionResult& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j{{"name", c.name}, {"bound", c.bound}, {"passed", c.passed()}};
    if (!c.timing) j["value"] = c.value;
    checks.push_back(j);
  }
  return {{"id", r.id}, {"title", r.title}, {"passed", r.passed()}, {"checks", checks}};
}

}  // namespace gl2::acceptance
