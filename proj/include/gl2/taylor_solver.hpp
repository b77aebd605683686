#pragma once

// Formal power-series solutions of the first-order system about the origin,
// prolonged order by order from first-order seed data.

#include "gl2/jet_fields.hpp"
#include "gl2/trunc_poly.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <vector>

namespace gl2::taylor {

using Series = TruncPoly<4, double>;
inline constexpr int kMaxOrder = 6;

struct SeriesSolution {
  int order = 0;                 // total degree cap N
  std::array<Series, 4> fields;  // A, B, C, D

  static SeriesSolution zero(int order);
};

/// Values and gradients at the origin.
struct Seed {
  jets::Values4 values{};
  std::array<std::array<double, 4>, 4> grad{};  // [field][direction]
};

struct OrderReport {
  int degree = 0;       // degree of the residual coefficients being cancelled
  int unknowns = 0;     // coefficients of degree + 1
  int conditions = 0;   // residual coefficients of this degree
  int rank = 0;         // independent linear conditions
  double residual = 0.0;
};

struct ProlongationReport {
  std::vector<OrderReport> orders;
  double max_residual = 0.0;
};

struct Prolongation {
  SeriesSolution series;
  ProlongationReport report;
};

inline constexpr double kProlongTol = 1e-10;

/// Throws UsageError when the seed violates the order-0 equations (naming
/// them) or N is outside [1, kMaxOrder]; NotInImageError when an order cannot
/// be solved within tol.
Prolongation prolong(const Seed& seed, int order, double tol = kProlongTol);

/// Four residual series; only degrees < order are meaningful.
std::array<Series, 4> residual_series(const SeriesSolution& s);
/// Max |coefficient| of the residual series through degree order - 1.
double verify_series(const SeriesSolution& s);

/// Origin 2-jet (values, gradient, Hessian) of the series.
jets::FieldJet origin_jet(const SeriesSolution& s);
Seed seed_of(const SeriesSolution& s);
/// Seed with gradients projected onto the solution space of the order-0
/// equations at the given values.
Seed project_seed(const Seed& raw);

/// Polynomial evaluation of a series as a field.
class SeriesFields final : public jets::AnalyticFields {
 public:
  explicit SeriesFields(SeriesSolution s) : s_(std::move(s)) {}
  std::string name() const override { return "series"; }
  jets::FieldJet evaluate(const jets::Point4& x) const override;
  nlohmann::json describe() const override;

 private:
  SeriesSolution s_;
};

// {"order": N, "A": [{"e": [i,j,k,l], "c": v}, ...], "B": ..., ...}
nlohmann::json to_json(const SeriesSolution& s);
SeriesSolution series_from_json(const nlohmann::json& j);
// {"A": {"value": v, "grad": [4]}, ...}
nlohmann::json to_json(const Seed& s);
Seed seed_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProlongationReport& r);

}  // namespace gl2::taylor
