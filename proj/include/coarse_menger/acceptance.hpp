#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coarse_menger/caps.hpp"

namespace coarse_menger {

struct CriterionInfo {
  int id;
  const char* key;
  const char* title;
  double budget_seconds;
};

// The twelve checks in run order.
const std::vector<CriterionInfo>& acceptance_criteria();

struct AcceptanceOptions {
  std::uint64_t seed = 20240917;
  std::vector<std::string> only;  // criterion keys; empty runs everything
  // Key of a criterion whose computed values get perturbed before checking, to show the
  // harness catches a broken solver. Empty for none.
  std::string fault;
  int jobs = 1;
  Caps caps = default_caps();
};

struct CriterionOutcome {
  int id = 0;
  std::string key;
  std::string title;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;  // first failure, or a one-line summary
  nlohmann::json data;
};

struct AcceptanceReport {
  std::uint64_t seed = 0;
  std::string fault;
  std::vector<CriterionOutcome> criteria;

  bool passed() const;
  nlohmann::json to_json() const;
};

// Throws InputError for unknown keys in `only` or `fault`.
AcceptanceReport run_acceptance(const AcceptanceOptions& options);

// "PASS  3 grid (0.41 s): ..." lines, one per criterion.
std::string summary_lines(const AcceptanceReport& report);

// Runs fn(0..count-1) on up to `jobs` threads. Results must be written by index.
void parallel_for(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace coarse_menger
