#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  using namespace nvodmr::acceptance;
  if (argc == 3 && std::string(argv[1]) == "--only") {
    const int id = std::atoi(argv[2]);
    if (id < 1 || id > kCriteria) {
      std::cerr << "criterion id must be in [1, " << kCriteria << "]\n";
      return 2;
    }
    const CriterionResult r = run_criterion(id);
    std::cout << format(r) << '\n';
    return r.passed ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: " << argv[0] << " [--only N]\n";
    return 2;
  }
  int failed = 0;
  for (const CriterionResult& r : run_all()) {
    std::cout << format(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (kCriteria - failed) << "/" << kCriteria << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
