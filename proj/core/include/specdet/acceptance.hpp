#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace specdet {

// One acceptance criterion: a measured deviation against its declared
// tolerance, with the certified numeric error of the measurement where the
// pipelines provide one (0 with a note in detail otherwise).
struct CriterionResult {
  std::string name;
  double value = 0.0;
  double error_bound = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  std::uint64_t seed = 0;
  bool all_pass = false;
};

// Runs the full acceptance suite.  The seed only affects the randomized
// scattering sweep; everything else is deterministic.
AcceptanceReport run_acceptance(std::uint64_t seed = 0);

nlohmann::json acceptance_report_to_json(const AcceptanceReport& rep);

}  // namespace specdet
