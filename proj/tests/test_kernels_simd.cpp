#include "gl2/errors.hpp"
#include "gl2/kernels/batch.hpp"
#include "gl2/lax_pair.hpp"
#include "gl2/pde_system.hpp"
#include "support.hpp"

#include <cmath>

using namespace gl2;
using namespace gl2::kernels;
using gl2::testing::Gen;

namespace {

std::vector<jets::FieldJet> random_jets(std::size_t n, std::uint64_t seed) {
  Gen g(seed);
  std::vector<jets::FieldJet> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(g.jet());
  return out;
}

}  // namespace

TEST_CASE("backend names") {
  CHECK(parse_backend("scalar") == Backend::kScalar);
  CHECK(parse_backend("auto") == best_backend());
  CHECK_THROWS_AS(parse_backend("sse9"), UsageError);
  if (avx2_available())
    CHECK(to_string(parse_backend("avx2")) == "avx2");
  else
    CHECK_THROWS_AS(parse_backend("avx2"), UsageError);
}

TEST_CASE("scalar batch agrees with the pointwise evaluators") {
  const auto js = random_jets(9, 3);
  const auto b = JetBatch::from_jets(js);
  const auto r = residuals_batch(b, Backend::kScalar);
  const auto c = commutator_batch(b, Backend::kScalar);
  for (std::size_t i = 0; i < js.size(); ++i) {
    const auto p = pde::residuals(js[i]).r;
    for (std::size_t k = 0; k < 4; ++k) CHECK(r.r[k][i] == doctest::Approx(p[k]).epsilon(1e-13).scale(1.0));
    const auto l = lax::commutator(js[i]);
    for (std::size_t k = 0; k < 5; ++k)
      for (int q = 0; q < 7; ++q)
        CHECK(c.coeff[k][static_cast<std::size_t>(q)][i] == doctest::Approx(l.comp[k].coeff(q)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("AVX2 and scalar backends agree") {
  if (!avx2_available()) return;
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u}) {
    CAPTURE(n);
    const auto b = JetBatch::from_jets(random_jets(n, 100 + n));
    const auto rs = residuals_batch(b, Backend::kScalar);
    const auto rv = residuals_batch(b, Backend::kAvx2);
    const auto cs = commutator_batch(b, Backend::kScalar);
    const auto cv = commutator_batch(b, Backend::kAvx2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < 4; ++k)
        CHECK(std::abs(rs.r[k][i] - rv.r[k][i]) <= 1e-13 * (1.0 + std::abs(rs.r[k][i])));
      for (std::size_t k = 0; k < 5; ++k)
        for (std::size_t q = 0; q < 7; ++q)
          CHECK(std::abs(cs.coeff[k][q][i] - cv.coeff[k][q][i]) <= 1e-13 * (1.0 + std::abs(cs.coeff[k][q][i])));
      CHECK(cs.max_abs(i) == doctest::Approx(cv.max_abs(i)));
    }
  }
}
