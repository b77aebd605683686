#include "gl2/acceptance.hpp"

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 0;
  bool ok = true;
  for (const auto& r : gl2::acceptance::run_all(seed)) {
    std::cout << r.line() << '\n';
    ok = ok && r.passed();
  }
  std::cout << (ok ? "all criteria passed" : "some criteria FAILED") << '\n';
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
