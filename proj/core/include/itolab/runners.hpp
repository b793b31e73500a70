#pragma once

#include <iosfwd>
#include <string>

#include "itolab/config.hpp"

namespace itolab {

/// Exit codes shared by the runners and the command line tool.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;

/// Resolvent property suite on the configured grid; writes
/// resolvent_verify.csv. Returns kExitPass iff every row passes.
int run_resolvent_verify(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

/// Squared-norm and generalized ledgers over the dt ladder plus the lifting
/// convergence study on a stored trajectory; writes ito_verify.csv and
/// lifting.csv.
int run_ito_verify(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

/// Positivity experiment over the dt ladder with the Gronwall sequence
/// check; power_check instead runs the sign-violating source and succeeds
/// only when the violation is detected. Writes maxprin.csv.
int run_maxprin(const RunConfig& cfg, const std::string& out_dir, std::ostream& log,
                bool power_check, bool override_assumptions);

/// Raw trajectories and diagnostics for the configured problem; writes
/// trajectory.csv and diagnostics.csv.
int run_simulate(const RunConfig& cfg, const std::string& out_dir, std::ostream& log);

} // namespace itolab
