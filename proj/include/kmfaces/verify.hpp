#pragma once

#include "kmfaces/hull.hpp"

namespace kmf::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full verification suite; one result per criterion.
std::vector<CriterionResult> run_all();

/// Pretty pass/fail table; returns true when everything passed.
bool print_table(const std::vector<CriterionResult>& results, std::ostream& os);

}  // namespace kmf::verify
