#include "gl2/jet_fields.hpp"

#include "gl2/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gl2::jets {

namespace {

constexpr std::array<const char*, 4> kFieldNames{"A", "B", "C", "D"};

double cubic_value(const Cubic& c, double t) { return c[0] + t * (c[1] + t * (c[2] + t * c[3])); }
double cubic_d1(const Cubic& c, double t) { return c[1] + t * (2.0 * c[2] + 3.0 * t * c[3]); }
double cubic_d2(const Cubic& c, double t) { return 2.0 * c[2] + 6.0 * t * c[3]; }

Cubic cubic_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() > 4)
    throw UsageError(std::string(what) + ": expected up to four cubic coefficients [c0, c1, c2, c3]");
  Cubic c{};
  for (std::size_t i = 0; i < j.size(); ++i) {
    c[i] = j[i].get<double>();
    if (!std::isfinite(c[i])) throw UsageError(std::string(what) + ": non-finite coefficient");
  }
  return c;
}

std::shared_ptr<const AnalyticFields> single_field(std::string name, const char* param, int field,
                                                   int coordinate, const Cubic& c) {
  SeparableCubicFields::Table t{};
  t[static_cast<std::size_t>(field)][static_cast<std::size_t>(coordinate)] = c;
  return std::make_shared<SeparableCubicFields>(std::move(name),
                                                nlohmann::json{{param, c}}, t);
}

}  // namespace

bool Jet2Scalar::finite() const noexcept {
  if (!std::isfinite(value)) return false;
  for (double g : grad)
    if (!std::isfinite(g)) return false;
  for (double h : hess.upper())
    if (!std::isfinite(h)) return false;
  return true;
}

SeparableCubicFields::SeparableCubicFields(std::string name, nlohmann::json params, Table table)
    : name_(std::move(name)), params_(std::move(params)), table_(table) {
  for (const auto& field : table_)
    for (const auto& c : field)
      for (double v : c)
        if (!std::isfinite(v)) throw UsageError("fixture " + name_ + ": non-finite coefficient");
}

FieldJet SeparableCubicFields::evaluate(const Point4& x) const {
  FieldJet out;
  out.base_point = x;
  out.order = 2;
  for (std::size_t k = 0; k < 4; ++k) {
    Jet2Scalar& j = out.f[k];
    for (std::size_t i = 0; i < 4; ++i) {
      const Cubic& c = table_[k][i];
      j.value += cubic_value(c, x[i]);
      j.grad[i] = cubic_d1(c, x[i]);
      j.hess.set(static_cast<int>(i), static_cast<int>(i), cubic_d2(c, x[i]));
    }
  }
  return out;
}

Values4 SeparableCubicFields::values(const Point4& x) const {
  Values4 v{};
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i) v[k] += cubic_value(table_[k][i], x[i]);
  return v;
}

std::shared_ptr<const AnalyticFields> zero_fixture() {
  return std::make_shared<SeparableCubicFields>("zero", nlohmann::json::object(),
                                                SeparableCubicFields::Table{});
}

std::shared_ptr<const AnalyticFields> constants_fixture(const Values4& abcd) {
  SeparableCubicFields::Table t{};
  for (std::size_t k = 0; k < 4; ++k) t[k][0][0] = abcd[k];
  return std::make_shared<SeparableCubicFields>("constants", nlohmann::json{{"values", abcd}}, t);
}

std::shared_ptr<const AnalyticFields> a_of_x0_fixture(const Cubic& f) {
  return single_field("a_of_x0", "f", kA, 0, f);
}

std::shared_ptr<const AnalyticFields> d_of_x3_fixture(const Cubic& g) {
  return single_field("d_of_x3", "g", kD, 3, g);
}

std::shared_ptr<const AnalyticFields> b_of_x3_fixture(const Cubic& g) {
  return single_field("b_of_x3", "g", kB, 3, g);
}

std::shared_ptr<const AnalyticFields> perturb_b(const SeparableCubicFields& base, double eps,
                                                const Cubic& bump) {
  auto t = base.table();
  for (std::size_t i = 0; i < 4; ++i) t[kB][3][i] += eps * bump[i];
  nlohmann::json params{{"base", base.describe()}, {"eps", eps}, {"bump", bump}};
  return std::make_shared<SeparableCubicFields>("perturbed_b", std::move(params), t);
}

std::shared_ptr<const AnalyticFields> fixture_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("name") || !j["name"].is_string())
    throw UsageError("fixture description must be an object with a string \"name\"");
  const std::string name = j["name"].get<std::string>();
  const nlohmann::json params = j.value("parameters", nlohmann::json::object());
  if (name == "zero") return zero_fixture();
  if (name == "constants") {
    const auto& v = params.contains("values") ? params["values"] : params;
    if (!v.is_array() || v.size() != 4) throw UsageError("constants: expected four values");
    return constants_fixture(v.get<Values4>());
  }
  if (name == "a_of_x0") return a_of_x0_fixture(cubic_from_json(params.at("f"), "a_of_x0"));
  if (name == "d_of_x3") return d_of_x3_fixture(cubic_from_json(params.at("g"), "d_of_x3"));
  if (name == "b_of_x3") return b_of_x3_fixture(cubic_from_json(params.at("g"), "b_of_x3"));
  if (name == "perturbed_b") {
    auto base = fixture_from_json(params.at("base"));
    const auto* sep = dynamic_cast<const SeparableCubicFields*>(base.get());
    if (sep == nullptr) throw UsageError("perturbed_b: base must be a separable fixture");
    return perturb_b(*sep, params.at("eps").get<double>(),
                     cubic_from_json(params.at("bump"), "perturbed_b"));
  }
  throw UsageError("unknown fixture name: " + name);
}

FieldJet finite_difference_jet(const ValueFunction& fields, const Point4& x,
                               FiniteDifferenceOptions opts) {
  if (!(opts.h > 0.0)) throw UsageError("finite_difference_jet: step must be positive");

  auto shifted = [&](int i, double di, int j, double dj) {
    Point4 p = x;
    p[static_cast<std::size_t>(i)] += di;
    p[static_cast<std::size_t>(j)] += dj;
    return fields(p);
  };

  auto estimate = [&](double h) {
    FieldJet out;
    out.base_point = x;
    out.order = 2;
    const Values4 f0 = fields(x);
    for (std::size_t k = 0; k < 4; ++k) out.f[k].value = f0[k];
    for (int i = 0; i < 4; ++i) {
      const Values4 fp = shifted(i, h, i, 0.0);
      const Values4 fm = shifted(i, -h, i, 0.0);
      for (std::size_t k = 0; k < 4; ++k) {
        out.f[k].grad[static_cast<std::size_t>(i)] = (fp[k] - fm[k]) / (2.0 * h);
        out.f[k].hess.set(i, i, (fp[k] - 2.0 * f0[k] + fm[k]) / (h * h));
      }
      for (int j = i + 1; j < 4; ++j) {
        const Values4 fpp = shifted(i, h, j, h);
        const Values4 fpm = shifted(i, h, j, -h);
        const Values4 fmp = shifted(i, -h, j, h);
        const Values4 fmm = shifted(i, -h, j, -h);
        for (std::size_t k = 0; k < 4; ++k)
          out.f[k].hess.set(i, j, (fpp[k] - fpm[k] - fmp[k] + fmm[k]) / (4.0 * h * h));
      }
    }
    return out;
  };

  FieldJet coarse = estimate(opts.h);
  if (!opts.richardson) return coarse;
  const FieldJet fine = estimate(0.5 * opts.h);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < 4; ++i)
      coarse.f[k].grad[i] = (4.0 * fine.f[k].grad[i] - coarse.f[k].grad[i]) / 3.0;
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j)
        coarse.f[k].hess.set(i, j, (4.0 * fine.f[k].hess(i, j) - coarse.f[k].hess(i, j)) / 3.0);
  }
  return coarse;
}

FieldJet finite_difference_jet(const AnalyticFields& fields, const Point4& x,
                               FiniteDifferenceOptions opts) {
  return finite_difference_jet([&fields](const Point4& p) { return fields.values(p); }, x, opts);
}

nlohmann::json to_json(const FieldJet& j) {
  nlohmann::json out{{"base_point", j.base_point}, {"order", j.order}};
  for (std::size_t k = 0; k < 4; ++k) {
    const Jet2Scalar& s = j.f[k];
    nlohmann::json hess = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
      std::array<double, 4> row{};
      for (int c = 0; c < 4; ++c) row[static_cast<std::size_t>(c)] = s.hess(r, c);
      hess.push_back(row);
    }
    out[kFieldNames[k]] = {{"value", s.value}, {"grad", s.grad}, {"hess", hess}};
  }
  return out;
}

FieldJet field_jet_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("field jet must be a JSON object");
  FieldJet out;
  out.base_point = j.value("base_point", Point4{});
  bool have_grad = true;
  bool have_hess = true;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!j.contains(kFieldNames[k]))
      throw UsageError(std::string("field jet is missing field ") + kFieldNames[k]);
    const auto& s = j[kFieldNames[k]];
    Jet2Scalar& dst = out.f[k];
    dst.value = s.at("value").get<double>();
    if (s.contains("grad")) {
      dst.grad = s["grad"].get<std::array<double, 4>>();
    } else {
      have_grad = false;
    }
    if (s.contains("hess")) {
      const auto rows = s["hess"].get<std::array<std::array<double, 4>, 4>>();
      for (int r = 0; r < 4; ++r)
        for (int c = r; c < 4; ++c) {
          const double a = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
          const double b = rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
          if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a)))
            throw UsageError(std::string("Hessian of ") + kFieldNames[k] + " is not symmetric");
          dst.hess.set(r, c, 0.5 * (a + b));
        }
    } else {
      have_hess = false;
    }
    if (!dst.finite()) throw UsageError(std::string("non-finite entry in field ") + kFieldNames[k]);
  }
  const int implied = have_grad ? (have_hess ? 2 : 1) : 0;
  out.order = std::min(implied, j.value("order", implied));
  return out;
}

}  // namespace gl2::jets
