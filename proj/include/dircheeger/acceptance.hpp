#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dircheeger/report.hpp"

namespace dircheeger {

struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  /// First failing check, or a one-line summary when everything passed.
  std::string detail;
  /// Deterministic numbers behind the verdict (no timings).
  Json data;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240601;
  /// Instances inside a criterion are spread over this many threads
  /// (0 = all cores); verdicts and data do not depend on it.
  int threads = 1;
  /// Subset of criterion ids 1..10 to run; empty runs all of them.
  std::vector<int> only;
};

inline constexpr int kNumCriteria = 10;

/// Runs the numerical acceptance criteria 1..10. A criterion fails when any
/// check fails, when a routine throws, or when it exceeds its time limit.
std::vector<CriterionOutcome> run_acceptance(const AcceptanceOptions& options = {});

/// {"criteria": [...], "checks_passed": bool}. Wall time is left out so the
/// payload is reproducible; time-limit verdicts live in CriterionOutcome.
Json acceptance_result(const std::vector<CriterionOutcome>& outcomes);

/// "[PASS]  1 exact evaluators (0.01 s / 1 s): detail".
std::string format_outcome(const CriterionOutcome& outcome);

}  // namespace dircheeger
