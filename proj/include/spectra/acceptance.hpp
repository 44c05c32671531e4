#ifndef SPECTRA_ACCEPTANCE_HPP
#define SPECTRA_ACCEPTANCE_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace spectra::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

// One line: "PASS  [id] name (x.xs / budget s): detail".
std::string format_result(const CriterionResult& r);

// Runs every criterion in order. A criterion passes only when its
// tolerance holds and it finishes within its time budget.
std::vector<CriterionResult> run_all(std::uint64_t seed,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace spectra::acceptance

#endif
