// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Optional arguments restrict the run to the given criterion ids.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "schreier/selfcheck.hpp"

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  auto reports = schreier::selfcheck::run(ids, std::cout);
  int failed = 0;
  for (const auto& r : reports) failed += !r.outcome.passed;
  std::cout << reports.size() - failed << "/" << reports.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
