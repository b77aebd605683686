#pragma once

// Truncated multivariate power series in NV variables, total degree <= cap.
// Arithmetic truncates silently at the cap. The scalar type only needs a
// ring interface (construction from int, +, -, *), so the same code runs on
// doubles and on exact rationals.

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gl2 {

template <int NV>
using Exponent = std::array<int, NV>;

/// Graded enumeration of all exponents of total degree <= cap, together with
/// a cached product index table.
template <int NV>
class MonomialTable {
 public:
  static std::shared_ptr<const MonomialTable> get(int cap) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const MonomialTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[cap];
    if (!slot) slot = std::shared_ptr<const MonomialTable>(new MonomialTable(cap));
    return slot;
  }

  int cap() const noexcept { return cap_; }
  std::size_t size() const noexcept { return exps_.size(); }
  const Exponent<NV>& exponent(std::size_t i) const { return exps_[i]; }
  int degree(std::size_t i) const { return degree_[i]; }
  /// Index of an exponent, or -1 beyond the cap.
  int index(const Exponent<NV>& e) const {
    auto it = lookup_.find(e);
    return it == lookup_.end() ? -1 : it->second;
  }
  /// Index of exps[i] + exps[j], or -1 when the sum exceeds the cap.
  int product(std::size_t i, std::size_t j) const { return prod_[i * exps_.size() + j]; }
  /// Index of exps[i] - unit(var), or -1 when exps[i][var] == 0.
  int lowered(std::size_t i, int var) const { return lower_[i * NV + static_cast<std::size_t>(var)]; }
  /// First index of a given total degree (degree cap + 1 gives size()).
  std::size_t degree_begin(int d) const { return begin_[static_cast<std::size_t>(d)]; }

 private:
  explicit MonomialTable(int cap) : cap_(cap) {
    if (cap < 0) throw std::invalid_argument("MonomialTable: negative degree cap");
    for (int d = 0; d <= cap; ++d) {
      begin_.push_back(exps_.size());
      Exponent<NV> e{};
      enumerate(d, 0, e);
    }
    begin_.push_back(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) lookup_[exps_[i]] = static_cast<int>(i);
    const std::size_t n = exps_.size();
    prod_.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (degree_[i] + degree_[j] > cap_) continue;
        Exponent<NV> s{};
        for (int v = 0; v < NV; ++v) s[v] = exps_[i][v] + exps_[j][v];
        prod_[i * n + j] = lookup_.at(s);
      }
    lower_.assign(n * NV, -1);
    for (std::size_t i = 0; i < n; ++i)
      for (int v = 0; v < NV; ++v) {
        if (exps_[i][v] == 0) continue;
        Exponent<NV> s = exps_[i];
        --s[v];
        lower_[i * NV + static_cast<std::size_t>(v)] = lookup_.at(s);
      }
  }

  // Lexicographic within a degree, first variable highest.
  void enumerate(int remaining, int var, Exponent<NV>& e) {
    if (var == NV - 1) {
      e[var] = remaining;
      exps_.push_back(e);
      int d = 0;
      for (int v = 0; v < NV; ++v) d += e[v];
      degree_.push_back(d);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = k;
      enumerate(remaining - k, var + 1, e);
    }
    e[var] = 0;
  }

  int cap_;
  std::vector<Exponent<NV>> exps_;
  std::vector<int> degree_;
  std::vector<std::size_t> begin_;
  std::map<Exponent<NV>, int> lookup_;
  std::vector<int> prod_;
  std::vector<int> lower_;
};

template <int NV, class T = double>
class TruncPoly {
 public:
  /// Degree-0 placeholder so arrays of series can be default-built.
  TruncPoly() : TruncPoly(0) {}
  explicit TruncPoly(int cap) : table_(MonomialTable<NV>::get(cap)), c_(table_->size(), T(0)) {}

  static TruncPoly constant(int cap, T v) {
    TruncPoly p(cap);
    p.c_[0] = v;
    return p;
  }
  /// center + u_var: a coordinate function expanded about `center`.
  static TruncPoly coordinate(int cap, int var, T center) {
    TruncPoly p = constant(cap, center);
    if (cap >= 1) {
      Exponent<NV> e{};
      e[var] = 1;
      p.c_[static_cast<std::size_t>(p.table_->index(e))] = T(1);
    }
    return p;
  }

  int cap() const noexcept { return table_->cap(); }
  std::size_t size() const noexcept { return c_.size(); }
  const MonomialTable<NV>& table() const noexcept { return *table_; }

  T& operator[](std::size_t i) { return c_[i]; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T coeff(const Exponent<NV>& e) const {
    const int i = table_->index(e);
    return i < 0 ? T(0) : c_[static_cast<std::size_t>(i)];
  }
  void set(const Exponent<NV>& e, T v) {
    const int i = table_->index(e);
    if (i < 0) throw std::out_of_range("TruncPoly::set: exponent beyond degree cap");
    c_[static_cast<std::size_t>(i)] = v;
  }
  const std::vector<T>& coefficients() const noexcept { return c_; }

  /// Formal partial derivative. The top-degree slot of the result is zero,
  /// i.e. the derivative is only meaningful through degree cap - 1.
  TruncPoly derivative(int var) const {
    TruncPoly out(cap());
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const int lo = table_->lowered(i, var);
      if (lo < 0) continue;
      out.c_[static_cast<std::size_t>(lo)] = T(table_->exponent(i)[var]) * c_[i];
    }
    return out;
  }

  TruncPoly& operator+=(const TruncPoly& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    return *this;
  }
  TruncPoly& operator-=(const TruncPoly& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    return *this;
  }
  TruncPoly& operator*=(const T& s) {
    for (auto& v : c_) v = v * s;
    return *this;
  }

  friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
  friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
  friend TruncPoly operator-(TruncPoly a) { return a *= T(-1); }
  friend TruncPoly operator*(TruncPoly a, const T& s) { return a *= s; }
  friend TruncPoly operator*(const T& s, TruncPoly a) { return a *= s; }

  friend TruncPoly operator*(const TruncPoly& a, const TruncPoly& b) {
    a.check(b);
    TruncPoly out(a.cap());
    const auto& t = *a.table_;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T(0)) continue;
      const std::size_t j_end = t.degree_begin(t.cap() - t.degree(i) + 1);
      for (std::size_t j = 0; j < j_end; ++j) {
        const int k = t.product(i, j);
        out.c_[static_cast<std::size_t>(k)] = out.c_[static_cast<std::size_t>(k)] + a.c_[i] * b.c_[j];
      }
    }
    return out;
  }

 private:
  void check(const TruncPoly& o) const {
    if (o.table_ != table_) throw std::invalid_argument("TruncPoly: degree caps differ");
  }

  std::shared_ptr<const MonomialTable<NV>> table_;
  std::vector<T> c_;
};

}  // namespace gl2
