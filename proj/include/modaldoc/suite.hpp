#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace modaldoc {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;  // counts on success, witnesses on failure
};

struct Criterion {
  int id;
  std::string title;
  CriterionResult (*run)(std::uint64_t seed);
};

// Criteria 1..11 over the bundled instances; deterministic given the seed.
const std::vector<Criterion>& acceptance_criteria();
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

}  // namespace modaldoc
