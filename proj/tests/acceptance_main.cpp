#include <cstdlib>
#include <iostream>
#include <string>

#include "coarse_menger/acceptance.hpp"

// One PASS/FAIL line per criterion. Optional arguments: seed, then criterion keys.
int main(int argc, char** argv) {
  coarse_menger::AcceptanceOptions options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  for (int i = 2; i < argc; ++i) options.only.emplace_back(argv[i]);
  auto report = coarse_menger::run_acceptance(options);
  std::cout << coarse_menger::summary_lines(report);
  std::cout << (report.passed() ? "all criteria passed" : "some criteria failed") << "\n";
  return report.passed() ? 0 : 1;
}
