#pragma once

// Vector fields on R^4 x R_lambda that are polynomial in lambda: the pair
// L0, L1 built from a field jet, their commutator, and composed-flow tracing.

#include "gl2/jet_fields.hpp"

#include <array>
#include <vector>

namespace gl2::lax {

using jets::AnalyticFields;
using jets::FieldJet;
using jets::Point4;

/// sum_k c[k] lambda^k with trailing zeros trimmed.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(std::vector<double> c);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  double coeff(int k) const noexcept;
  const std::vector<double>& coefficients() const noexcept { return c_; }
  double operator()(double lambda) const noexcept;
  LambdaPoly derivative() const;
  double max_abs() const noexcept;

  friend LambdaPoly operator+(const LambdaPoly& a, const LambdaPoly& b);
  friend LambdaPoly operator-(const LambdaPoly& a, const LambdaPoly& b);
  friend LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b);
  friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

 private:
  void trim();
  std::vector<double> c_;
};

/// Components ordered d0, d1, d2, d3, d_lambda.
inline constexpr int kLambdaComp = 4;
using State5 = std::array<double, 5>;

struct LambdaVectorField {
  std::array<LambdaPoly, 5> comp;

  State5 at(double lambda) const noexcept;
  double max_abs_coeff() const noexcept;
};

LambdaVectorField build_L0(const FieldJet& j);
LambdaVectorField build_L1(const FieldJet& j);

/// [L0, L1] at one point from the 2-jet. Throws UsageError if the jet lacks
/// Hessians or a component exceeds lambda_degree_cap.
LambdaVectorField commutator(const FieldJet& j, int lambda_degree_cap = 6);
LambdaVectorField commutator(const AnalyticFields& fields, const Point4& x, int lambda_degree_cap = 6);

enum class Which { kL0, kL1 };

/// Classical RK4 along L0 or L1 for time `duration` with steps <= step.
/// The fields are queried at every stage. Throws UsageError for step <= 0.
State5 flow(const AnalyticFields& fields, Which which, State5 start, double duration, double step,
            std::vector<State5>* path = nullptr);

struct FlowTrace {
  State5 forward{};   // L1 for s, then L0 for t
  State5 reversed{};  // L0 for t, then L1 for s
  double discrepancy = 0.0;
};

FlowTrace flow_trace(const AnalyticFields& fields, const State5& start, double s, double t, double step);

/// Polyline of the forward composition, one row per RK4 step.
std::vector<State5> trace_polyline(const AnalyticFields& fields, const State5& start, double s, double t,
                                   double step);

struct ConvergenceStudy {
  std::vector<double> steps;
  std::vector<double> discrepancies;
  std::vector<double> pairwise_orders;  // log2 ratios of successive halvings
  double fitted_order = 0.0;            // least-squares slope in log-log
};

ConvergenceStudy flow_convergence(const AnalyticFields& fields, const State5& start, double s, double t,
                                  const std::vector<double>& steps);

}  // namespace gl2::lax
