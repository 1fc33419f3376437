#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sshd/quadrature.hpp"

namespace sshd {

enum class Tier { Quick, Full };
std::string to_string(Tier t);
Tier tier_from_string(const std::string &s);

enum class Status { Pass, Fail, Skipped };
std::string to_string(Status s);

struct CriterionResult {
  int id = 0;
  std::string name;
  Status status = Status::Fail;
  std::string detail;
  double seconds = 0.0;
  double budgetSeconds = 0.0;
};

struct AcceptanceOptions {
  Tier tier = Tier::Quick;
  // Quadrature settings for the analytic propagator checks.
  QuadratureSpec spec;
  // False when the configured model is gapless; analytic checks are skipped.
  bool analyticAvailable = true;
  unsigned seed = 12345;
  // Criterion ids to run; empty runs all twelve.
  std::vector<int> only;
};

// Runs the acceptance battery. Failures are reported, not thrown; `onResult`
// is called after each criterion finishes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions &opts,
    const std::function<void(const CriterionResult &)> &onResult = {});

std::string format_result(const CriterionResult &r);
bool all_passed(const std::vector<CriterionResult> &results);

} // namespace sshd
