// Acceptance battery: one pass/fail line per criterion, nonzero exit when any
// criterion fails.
#include <cstdio>

#include "wsl/runner.hpp"

int main() {
  auto results = wsl::acceptance_checks(0x5eed);
  int failures = 0;
  for (size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    std::printf("[%s] %2zu %-26s %s\n", r.pass ? "pass" : "FAIL", i + 1,
                r.name.c_str(), r.detail.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("%zu/%zu criteria passed\n", results.size() - failures,
              results.size());
  return failures == 0 ? 0 : 1;
}
