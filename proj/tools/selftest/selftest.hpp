#pragma once

#include <functional>
#include <string>
#include <vector>

namespace tdiso::selftest {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriteria = 10;

// Runs one acceptance criterion (1..kCriteria).
CriterionResult run_criterion(int id);

// Runs the listed criteria in order (all when empty), reporting each as it finishes.
std::vector<CriterionResult> run(const std::vector<int>& ids,
                                 const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace tdiso::selftest
