#pragma once

// 2-jets of the four scalar fields (A, B, C, D) on R^4 and closed-form
// solution fixtures with exact derivatives.

#include <nlohmann/json.hpp>

#include <array>
#include <functional>
#include <memory>
#include <string>

namespace gl2::jets {

using Point4 = std::array<double, 4>;
using Values4 = std::array<double, 4>;

/// Symmetric 4x4 matrix stored as its upper triangle (10 entries).
class SymHess4 {
 public:
  double operator()(int i, int j) const noexcept { return u_[slot(i, j)]; }
  void set(int i, int j, double v) noexcept { u_[slot(i, j)] = v; }
  const std::array<double, 10>& upper() const noexcept { return u_; }

  static int slot(int i, int j) noexcept {
    if (i > j) std::swap(i, j);
    return i * 4 - i * (i - 1) / 2 + (j - i);
  }

 private:
  std::array<double, 10> u_{};
};

struct Jet2Scalar {
  double value = 0.0;
  std::array<double, 4> grad{};
  SymHess4 hess;

  bool finite() const noexcept;
};

enum Field : int { kA = 0, kB = 1, kC = 2, kD = 3 };

/// Jets of A, B, C, D at one base point. `order` records how much of the
/// jet is meaningful: 0 = values, 1 = + gradients, 2 = + Hessians.
struct FieldJet {
  std::array<Jet2Scalar, 4> f{};
  Point4 base_point{};
  int order = 2;

  const Jet2Scalar& operator[](Field k) const noexcept { return f[static_cast<std::size_t>(k)]; }
  Values4 values() const noexcept { return {f[0].value, f[1].value, f[2].value, f[3].value}; }
  /// grads[field][direction]
  std::array<std::array<double, 4>, 4> grads() const noexcept {
    return {f[0].grad, f[1].grad, f[2].grad, f[3].grad};
  }
};

/// A point -> FieldJet map with exact derivatives.
class AnalyticFields {
 public:
  virtual ~AnalyticFields() = default;

  virtual std::string name() const = 0;
  virtual FieldJet evaluate(const Point4& x) const = 0;
  virtual Values4 values(const Point4& x) const { return evaluate(x).values(); }
  /// {name, parameters} description; round-trips through fixture_from_json.
  virtual nlohmann::json describe() const = 0;
};

/// Cubic c0 + c1 t + c2 t^2 + c3 t^3.
using Cubic = std::array<double, 4>;

/// Each field is a sum of univariate cubics, one per coordinate:
///   F_k(x) = sum_i p_{k,i}(x^i).
/// Covers every named fixture and their perturbations.
class SeparableCubicFields final : public AnalyticFields {
 public:
  using Table = std::array<std::array<Cubic, 4>, 4>;  // [field][coordinate]

  SeparableCubicFields(std::string name, nlohmann::json params, Table table);

  std::string name() const override { return name_; }
  FieldJet evaluate(const Point4& x) const override;
  Values4 values(const Point4& x) const override;
  nlohmann::json describe() const override { return {{"name", name_}, {"parameters", params_}}; }

  const Table& table() const noexcept { return table_; }

 private:
  std::string name_;
  nlohmann::json params_;
  Table table_;
};

// Named fixtures.
std::shared_ptr<const AnalyticFields> zero_fixture();
std::shared_ptr<const AnalyticFields> constants_fixture(const Values4& abcd);
/// A = f(x^0), B = C = D = 0.
std::shared_ptr<const AnalyticFields> a_of_x0_fixture(const Cubic& f);
/// D = g(x^3), A = B = C = 0.
std::shared_ptr<const AnalyticFields> d_of_x3_fixture(const Cubic& g);
/// B = g(x^3), A = C = D = 0. Not a solution unless g is constant; used as
/// the injected-failure control.
std::shared_ptr<const AnalyticFields> b_of_x3_fixture(const Cubic& g);
/// base + eps * (B += bump(x^3)); base must be separable.
std::shared_ptr<const AnalyticFields> perturb_b(const SeparableCubicFields& base, double eps,
                                                const Cubic& bump);

/// Builds a fixture from {name, parameters}; unknown names throw UsageError.
std::shared_ptr<const AnalyticFields> fixture_from_json(const nlohmann::json& j);

struct FiniteDifferenceOptions {
  double h = 1e-4;
  bool richardson = false;
};

using ValueFunction = std::function<Values4(const Point4&)>;

/// Central-difference gradient and Hessian estimate.
FieldJet finite_difference_jet(const ValueFunction& fields, const Point4& x,
                               FiniteDifferenceOptions opts = {});
FieldJet finite_difference_jet(const AnalyticFields& fields, const Point4& x,
                               FiniteDifferenceOptions opts = {});

// JSON for FieldJet: {"base_point": [...], "order": 2,
//   "A": {"value": v, "grad": [4], "hess": [[4]x4]}, "B": ..., ...}
nlohmann::json to_json(const FieldJet& j);
FieldJet field_jet_from_json(const nlohmann::json& j);

}  // namespace gl2::jets
