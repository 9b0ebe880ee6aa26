#include "kmfaces/verify.hpp"
#include <ostream>
namespace kmf::verify {
std::vector<CriterionResult> run_all() { return {}; }
bool print_table(const std::vector<CriterionResult>& results, std::ostream& os) {
  bool ok = true;
  for (const auto& r : results) { ok &= r.pass; os << r.name << "\n"; }
  return ok;
}
}  // namespace kmf::verify
