#ifndef GRPISO_ACCEPTANCE_HPP
#define GRPISO_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "grpiso/numth.hpp"

namespace grpiso {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;  // short outcome summary, printed on the status line
  double seconds = 0.0;
};

struct AcceptanceOptions {
  u64 seed = 20240821;
  /// Deliberately corrupt the first criterion's computed data, to exercise
  /// the failure path of the harness itself.
  bool fault_inject = false;
};

/// Run the full acceptance suite, printing one pass/fail line per criterion.
/// The run succeeded iff every returned result has passed == true.
std::vector<CriterionResult> run_acceptance(std::ostream& out,
                                            const AcceptanceOptions& opt = {});

}  // namespace grpiso

#endif
