#pragma once

// The end-to-end property suite, one entry per numbered criterion. Every
// sampled quantity is drawn from a generator seeded by `seed`.

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace gl2::acceptance {

struct Check {
  enum class Kind { kAtMost, kAtLeast, kGreater };

  std::string name;
  double value = 0.0;
  double bound = 0.0;
  Kind kind = Kind::kAtMost;
  /// Wall-clock bounds: the value is left out of reports to keep them
  /// byte-identical across runs.
  bool timing = false;

  bool passed() const;
  /// Signed margin, scaled so that larger means worse (for reporting).
  std::string describe() const;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  /// The failing check with the largest violation, else the tightest one.
  const Check* worst() const;
  /// "criterion  2 PASS  exact-solution fixtures  [worst: ...]"
  std::string line() const;
};

inline constexpr int kCriteria = 10;

CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_all(std::uint64_t seed);

nlohmann::json to_json(const CriterionResult& r);

}  // namespace gl2::acceptance
