// Runs every acceptance criterion and prints one PASS/FAIL line each.
#include <cstdio>

#include "vortexflow/acceptance.hpp"

int main() {
  const auto results = vortexflow::run_acceptance();
  std::fputs(vortexflow::acceptance_matrix(results).c_str(), stdout);
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
