#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "netsync/scenario.hpp"

namespace netsync::cli {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kCertificateFailed = 2,
  kDiverged = 3,
};

/// Structured certificate report for a resolved scenario. Always carries
/// lambda_star, epsilon, theorem2_margin, theorem3_margin and binding_mu
/// (null when not applicable), plus `requested` and `satisfied` for the
/// certificate matching the controller regime.
nlohmann::json certificate_report(const ResolvedScenario& scenario);

/// Final errors, settling time and divergence status of one run.
nlohmann::json run_summary(const ResolvedScenario& scenario, const Trajectory& trajectory);

/// Entry point behind the `netsync` binary. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace netsync::cli
