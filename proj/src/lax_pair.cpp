#include "gl2/lax_pair.hpp"

#include "gl2/errors.hpp"
#include "gl2/kernels/formulas.hpp"

#include <algorithm>
#include <cmath>

namespace gl2::lax {

namespace {

using kernels::Grad4;
using kernels::Quad;

LambdaVectorField to_field(const kernels::LaxField<double>& f) {
  LambdaVectorField out;
  for (std::size_t c = 0; c < 5; ++c)
    out.comp[c] = LambdaPoly({f.comp[c][0], f.comp[c][1], f.comp[c][2], f.comp[c][3]});
  return out;
}

kernels::LaxPairCoeffs<double> lax_coeffs(const FieldJet& j) {
  if (j.order < 1) throw UsageError("Lax pair: field jet needs first derivatives");
  const auto v = j.values();
  Grad4<double> g;
  for (std::size_t k = 0; k < 4; ++k) g[k] = j.f[k].grad;
  return kernels::lax_formula(Quad<double>{v[0], v[1], v[2], v[3]}, g);
}

State5 rhs(const AnalyticFields& fields, Which which, const State5& y) {
  FieldJet j = fields.evaluate({y[0], y[1], y[2], y[3]});
  const auto c = lax_coeffs(j);
  const auto& f = which == Which::kL0 ? c.l0 : c.l1;
  State5 out{};
  const double l = y[4];
  for (std::size_t k = 0; k < 5; ++k) {
    const auto& p = f.comp[k];
    out[k] = p[0] + l * (p[1] + l * (p[2] + l * p[3]));
  }
  return out;
}

State5 axpy(const State5& y, double a, const State5& k) {
  State5 out;
  for (std::size_t i = 0; i < 5; ++i) out[i] = y[i] + a * k[i];
  return out;
}

double distance(const State5& a, const State5& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

LambdaPoly::LambdaPoly(std::vector<double> c) : c_(std::move(c)) {
  for (double v : c_)
    if (!std::isfinite(v)) throw StructuralError("LambdaPoly: non-finite coefficient");
  trim();
}

void LambdaPoly::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double LambdaPoly::coeff(int k) const noexcept {
  return k >= 0 && k < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(k)] : 0.0;
}

double LambdaPoly::operator()(double lambda) const noexcept {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lambda + *it;
  return acc;
}

LambdaPoly LambdaPoly::derivative() const {
  std::vector<double> d;
  for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(static_cast<double>(k) * c_[k]);
  return LambdaPoly(std::move(d));
}

double LambdaPoly::max_abs() const noexcept {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

LambdaPoly operator+(const LambdaPoly& a, const LambdaPoly& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return LambdaPoly(std::move(c));
}

LambdaPoly operator-(const LambdaPoly& a, const LambdaPoly& b) {
  std::vector<double> c(std::max(a.c_.size(), b.c_.size()), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
  return LambdaPoly(std::move(c));
}

LambdaPoly operator*(const LambdaPoly& a, const LambdaPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<double> c(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[i + k] += a.c_[i] * b.c_[k];
  return LambdaPoly(std::move(c));
}

State5 LambdaVectorField::at(double lambda) const noexcept {
  State5 out;
  for (std::size_t k = 0; k < 5; ++k) out[k] = comp[k](lambda);
  return out;
}

double LambdaVectorField::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& p : comp) m = std::max(m, p.max_abs());
  return m;
}

LambdaVectorField build_L0(const FieldJet& j) { return to_field(lax_coeffs(j).l0); }
LambdaVectorField build_L1(const FieldJet& j) { return to_field(lax_coeffs(j).l1); }

LambdaVectorField commutator(const FieldJet& j, int lambda_degree_cap) {
  if (j.order < 2) throw UsageError("commutator: field jet needs second derivatives");
  const auto v = j.values();
  Grad4<double> g;
  kernels::Hess4<double> h;
  for (std::size_t k = 0; k < 4; ++k) {
    g[k] = j.f[k].grad;
    h[k] = j.f[k].hess.upper();
  }
  const auto c = kernels::commutator_formula(Quad<double>{v[0], v[1], v[2], v[3]}, g, h);
  LambdaVectorField out;
  for (std::size_t k = 0; k < 5; ++k) {
    out.comp[k] = LambdaPoly(std::vector<double>(c[k].begin(), c[k].end()));
    if (out.comp[k].degree() > lambda_degree_cap)
      throw UsageError("commutator: lambda degree " + std::to_string(out.comp[k].degree()) +
                       " exceeds cap " + std::to_string(lambda_degree_cap));
  }
  return out;
}

LambdaVectorField commutator(const AnalyticFields& fields, const Point4& x, int lambda_degree_cap) {
  return commutator(fields.evaluate(x), lambda_degree_cap);
}

State5 flow(const AnalyticFields& fields, Which which, State5 y, double duration, double step,
            std::vector<State5>* path) {
  if (!(step > 0.0) || !std::isfinite(step)) throw UsageError("flow: step must be positive");
  if (path) path->push_back(y);
  if (duration == 0.0) return y;
  const long n = std::max(1L, static_cast<long>(std::ceil(std::abs(duration) / step - 1e-9)));
  const double h = duration / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    const State5 k1 = rhs(fields, which, y);
    const State5 k2 = rhs(fields, which, axpy(y, 0.5 * h, k1));
    const State5 k3 = rhs(fields, which, axpy(y, 0.5 * h, k2));
    const State5 k4 = rhs(fields, which, axpy(y, h, k3));
    for (std::size_t c = 0; c < 5; ++c) y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    if (path) path->push_back(y);
  }
  return y;
}

FlowTrace flow_trace(const AnalyticFields& fields, const State5& start, double s, double t, double step) {
  FlowTrace out;
  out.forward = flow(fields, Which::kL0, flow(fields, Which::kL1, start, s, step), t, step);
  out.reversed = flow(fields, Which::kL1, flow(fields, Which::kL0, start, t, step), s, step);
  out.discrepancy = distance(out.forward, out.reversed);
  return out;
}

std::vector<State5> trace_polyline(const AnalyticFields& fields, const State5& start, double s, double t,
                                   double step) {
  std::vector<State5> path;
  const State5 mid = flow(fields, Which::kL1, start, s, step, &path);
  path.pop_back();
  flow(fields, Which::kL0, mid, t, step, &path);
  return path;
}

ConvergenceStudy flow_convergence(const AnalyticFields& fields, const State5& start, double s, double t,
                                  const std::vector<double>& steps) {
  ConvergenceStudy out;
  out.steps = steps;
  for (double h : steps) out.discrepancies.push_back(flow_trace(fields, start, s, t, h).discrepancy);
  for (std::size_t i = 1; i < steps.size(); ++i)
    out.pairwise_orders.push_back(std::log(out.discrepancies[i - 1] / out.discrepancies[i]) /
                                  std::log(steps[i - 1] / steps[i]));
  if (steps.size() >= 2) {
    double mx = 0, my = 0;
    const double n = static_cast<double>(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
      mx += std::log(steps[i]) / n;
      my += std::log(out.discrepancies[i]) / n;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const double dx = std::log(steps[i]) - mx;
      sxy += dx * (std::log(out.discrepancies[i]) - my);
      sxx += dx * dx;
    }
    out.fitted_order = sxy / sxx;
  }
  return out;
}

}  // namespace gl2::lax
