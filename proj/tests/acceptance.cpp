// One line per acceptance criterion; exits nonzero when any fails.

#include <cstdio>

#include "selftest.hpp"

int main() {
  std::size_t failed = 0;
  tdiso::selftest::run({}, [&](const tdiso::selftest::CriterionResult& r) {
    std::printf("[%s] %2d %s (%.2fs): %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  });
  std::printf("%zu of %d criteria failed\n", failed, tdiso::selftest::kCriteria);
  return failed == 0 ? 0 : 1;
}
