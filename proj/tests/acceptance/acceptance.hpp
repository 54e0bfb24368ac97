#pragma once

#include <string>
#include <vector>

namespace nvodmr::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

inline constexpr int kCriteria = 11;

/// Runs one criterion (1-based). Exceptions are caught and reported as a
/// failure.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

/// "PASS  3 eight-dip reconstruction (1.2 s): ..." style line.
std::string format(const CriterionResult& r);

}  // namespace nvodmr::acceptance
