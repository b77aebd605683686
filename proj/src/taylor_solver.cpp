#include "gl2/taylor_solver.hpp"

#include "gl2/errors.hpp"
#include "gl2/kernels/formulas.hpp"
#include "gl2/pde_system.hpp"
#include "gl2/tensor_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gl2::taylor {

namespace {

constexpr std::array<const char*, 4> kFieldNames{"A", "B", "C", "D"};

double ipow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

Exponent<4> unit_exp(int i) {
  Exponent<4> e{};
  e[static_cast<std::size_t>(i)] = 1;
  return e;
}

Exponent<4> pair_exp(int i, int j) {
  Exponent<4> e{};
  ++e[static_cast<std::size_t>(i)];
  ++e[static_cast<std::size_t>(j)];
  return e;
}

double max_abs_degree(const std::array<Series, 4>& r, int degree) {
  const auto& t = r[0].table();
  double m = 0.0;
  for (const auto& s : r)
    for (std::size_t i = t.degree_begin(degree); i < t.degree_begin(degree + 1); ++i) m = std::max(m, std::abs(s[i]));
  return m;
}

}  // namespace

SeriesSolution SeriesSolution::zero(int order) {
  SeriesSolution s;
  s.order = order;
  for (auto& f : s.fields) f = Series(order);
  return s;
}

std::array<Series, 4> residual_series(const SeriesSolution& s) {
  kernels::Quad<Series> v;
  kernels::Grad4<Series> g;
  for (std::size_t k = 0; k < 4; ++k) {
    v[k] = s.fields[k];
    for (std::size_t i = 0; i < 4; ++i) g[k][i] = s.fields[k].derivative(static_cast<int>(i));
  }
  return kernels::residual_formula(v, g);
}

double verify_series(const SeriesSolution& s) {
  if (s.order < 1) return 0.0;
  const auto r = residual_series(s);
  double m = 0.0;
  for (int d = 0; d < s.order; ++d) m = std::max(m, max_abs_degree(r, d));
  return m;
}

Seed project_seed(const Seed& raw) {
  const Eigen::MatrixXd m = pde::residual_map(raw.values);
  Eigen::VectorXd g(16);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i) g(k * 4 + i) = raw.grad[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
  const Eigen::MatrixXd n = tensor::null_space(m);
  const Eigen::VectorXd p = n * (n.transpose() * g);
  Seed out = raw;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i) out.grad[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = p(k * 4 + i);
  return out;
}

Prolongation prolong(const Seed& seed, int order, double tol) {
  if (order < 1 || order > kMaxOrder)
    throw UsageError("prolong: order must be in [1, " + std::to_string(kMaxOrder) + "], got " +
                     std::to_string(order));
  for (std::size_t k = 0; k < 4; ++k) {
    bool ok = std::isfinite(seed.values[k]);
    for (double v : seed.grad[k]) ok = ok && std::isfinite(v);
    if (!ok) throw UsageError(std::string("prolong: non-finite seed for ") + kFieldNames[k]);
  }

  Prolongation out;
  SeriesSolution& s = out.series;
  s = SeriesSolution::zero(order);
  for (std::size_t k = 0; k < 4; ++k) {
    s.fields[k].set({0, 0, 0, 0}, seed.values[k]);
    for (int i = 0; i < 4; ++i) s.fields[k].set(unit_exp(i), seed.grad[k][static_cast<std::size_t>(i)]);
  }

  const auto& t = s.fields[0].table();
  auto residual = residual_series(s);

  // Degree 0 involves only the seed.
  {
    std::ostringstream bad;
    double worst = 0.0;
    for (std::size_t r = 0; r < 4; ++r) {
      const double v = residual[r][0];
      worst = std::max(worst, std::abs(v));
      if (std::abs(v) > tol) bad << (bad.tellp() > 0 ? ", " : "") << "equation " << r + 1 << " (" << v << ")";
    }
    if (!bad.str().empty()) throw UsageError("prolong: seed violates the order-0 conditions: " + bad.str());
    out.report.orders.push_back({0, 0, 4, 0, worst});
    out.report.max_residual = worst;
  }

  // Degree-d residual coefficients are affine in the degree-(d+1) unknowns,
  // with linear part given by the first-derivative map at the origin values.
  const Eigen::MatrixXd lin = pde::residual_map(seed.values);
  for (int d = 1; d < order; ++d) {
    const std::size_t mu0 = t.degree_begin(d), mu1 = t.degree_begin(d + 1);
    const std::size_t m0 = mu1, m1 = t.degree_begin(d + 2);
    const Eigen::Index nmu = static_cast<Eigen::Index>(mu1 - mu0);
    const Eigen::Index nm = static_cast<Eigen::Index>(m1 - m0);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(4 * nmu, 4 * nm);
    Eigen::VectorXd rhs(4 * nmu);
    for (int r = 0; r < 4; ++r)
      for (std::size_t mu = mu0; mu < mu1; ++mu)
        rhs(r * nmu + static_cast<Eigen::Index>(mu - mu0)) = -residual[static_cast<std::size_t>(r)][mu];
    for (int k = 0; k < 4; ++k)
      for (std::size_t m = m0; m < m1; ++m)
        for (int i = 0; i < 4; ++i) {
          const int lo = t.lowered(m, i);
          if (lo < 0) continue;
          const double factor = t.exponent(m)[static_cast<std::size_t>(i)];
          for (int r = 0; r < 4; ++r)
            jac(r * nmu + (static_cast<Eigen::Index>(lo) - static_cast<Eigen::Index>(mu0)),
                k * nm + static_cast<Eigen::Index>(m - m0)) += factor * lin(r, k * 4 + i);
        }
    const Eigen::VectorXd u = tensor::min_norm_solve(jac, rhs);
    for (int k = 0; k < 4; ++k)
      for (std::size_t m = m0; m < m1; ++m)
        s.fields[static_cast<std::size_t>(k)][m] = u(k * nm + static_cast<Eigen::Index>(m - m0));

    residual = residual_series(s);
    const double res = max_abs_degree(residual, d);
    out.report.orders.push_back({d, static_cast<int>(4 * nm), static_cast<int>(4 * nmu),
                                 tensor::numerical_rank(jac), res});
    out.report.max_residual = std::max(out.report.max_residual, res);
    if (res > tol)
      throw NotInImageError("prolong: degree " + std::to_string(d) + " residual not cancelled", res);
  }
  return out;
}

jets::FieldJet origin_jet(const SeriesSolution& s) {
  jets::FieldJet j;
  j.order = std::min(2, s.order);
  for (std::size_t k = 0; k < 4; ++k) {
    const Series& f = s.fields[k];
    j.f[k].value = f.coeff({0, 0, 0, 0});
    for (int i = 0; i < 4; ++i) {
      j.f[k].grad[static_cast<std::size_t>(i)] = f.coeff(unit_exp(i));
      for (int l = i; l < 4; ++l) j.f[k].hess.set(i, l, f.coeff(pair_exp(i, l)) * (i == l ? 2.0 : 1.0));
    }
  }
  return j;
}

Seed seed_of(const SeriesSolution& s) {
  const jets::FieldJet j = origin_jet(s);
  Seed out;
  out.values = j.values();
  out.grad = j.grads();
  return out;
}

jets::FieldJet SeriesFields::evaluate(const jets::Point4& x) const {
  jets::FieldJet j;
  j.base_point = x;
  j.order = 2;
  for (std::size_t k = 0; k < 4; ++k) {
    const Series& f = s_.fields[k];
    const auto& t = f.table();
    for (std::size_t m = 0; m < f.size(); ++m) {
      const double c = f[m];
      if (c == 0.0) continue;
      const auto& e = t.exponent(m);
      // d^a/dx^a of x^e, per coordinate, for a = 0, 1, 2.
      std::array<std::array<double, 3>, 4> p{};
      for (std::size_t i = 0; i < 4; ++i) {
        const int n = e[i];
        p[i][0] = ipow(x[i], n);
        p[i][1] = n >= 1 ? n * ipow(x[i], n - 1) : 0.0;
        p[i][2] = n >= 2 ? n * (n - 1) * ipow(x[i], n - 2) : 0.0;
      }
      auto term = [&](std::array<int, 4> a) {
        double v = c;
        for (std::size_t i = 0; i < 4; ++i) v *= p[i][static_cast<std::size_t>(a[i])];
        return v;
      };
      j.f[k].value += term({0, 0, 0, 0});
      for (int i = 0; i < 4; ++i) {
        std::array<int, 4> a{};
        a[static_cast<std::size_t>(i)] = 1;
        j.f[k].grad[static_cast<std::size_t>(i)] += term(a);
        for (int l = i; l < 4; ++l) {
          std::array<int, 4> b = a;
          ++b[static_cast<std::size_t>(l)];
          j.f[k].hess.set(i, l, j.f[k].hess(i, l) + term(b));
        }
      }
    }
  }
  return j;
}

nlohmann::json SeriesFields::describe() const { return {{"name", name()}, {"parameters", to_json(s_)}}; }

nlohmann::json to_json(const SeriesSolution& s) {
  nlohmann::json j;
  j["order"] = s.order;
  for (std::size_t k = 0; k < 4; ++k) {
    nlohmann::json terms = nlohmann::json::array();
    const auto& f = s.fields[k];
    for (std::size_t m = 0; m < f.size(); ++m)
      if (f[m] != 0.0) terms.push_back({{"e", f.table().exponent(m)}, {"c", f[m]}});
    j[kFieldNames[k]] = terms;
  }
  return j;
}

SeriesSolution series_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("order")) throw UsageError("series: expected an object with \"order\"");
  const int order = j.at("order").get<int>();
  if (order < 0 || order > kMaxOrder) throw UsageError("series: order out of range");
  SeriesSolution s = SeriesSolution::zero(order);
  for (std::size_t k = 0; k < 4; ++k) {
    if (!j.contains(kFieldNames[k])) continue;
    for (const auto& term : j.at(kFieldNames[k])) {
      const auto e = term.at("e").get<Exponent<4>>();
      const int deg = e[0] + e[1] + e[2] + e[3];
      if (*std::min_element(e.begin(), e.end()) < 0 || deg > order)
        throw UsageError(std::string("series: bad exponent in field ") + kFieldNames[k]);
      s.fields[k].set(e, term.at("c").get<double>());
    }
  }
  return s;
}

nlohmann::json to_json(const Seed& s) {
  nlohmann::json j;
  for (std::size_t k = 0; k < 4; ++k) j[kFieldNames[k]] = {{"value", s.values[k]}, {"grad", s.grad[k]}};
  return j;
}

Seed seed_from_json(const nlohmann::json& j) {
  Seed s;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!j.contains(kFieldNames[k])) throw UsageError(std::string("seed: missing field ") + kFieldNames[k]);
    const auto& f = j.at(kFieldNames[k]);
    if (!f.is_object()) throw UsageError(std::string("seed: field ") + kFieldNames[k] + " must be an object");
    s.values[k] = f.value("value", 0.0);
    if (f.contains("grad")) {
      if (f.at("grad").size() != 4) throw UsageError(std::string("seed: grad of ") + kFieldNames[k] + " needs 4 entries");
      s.grad[k] = f.at("grad").get<std::array<double, 4>>();
    }
  }
  return s;
}

nlohmann::json to_json(const ProlongationReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& o : r.orders)
    rows.push_back({{"degree", o.degree}, {"unknowns", o.unknowns}, {"conditions", o.conditions},
                    {"rank", o.rank}, {"residual", o.residual}});
  return {{"orders", rows}, {"max_residual", r.max_residual}};
}

}  // namespace gl2::taylor
