#pragma once

#include <iosfwd>
#include <string_view>

#include "cnls_app/config.hpp"

namespace cnls::app {

enum ExitCode : int {
  kExitPass = 0,
  kExitValidation = 1,
  kExitVerificationFailure = 2,
  kExitDivergence = 3,
};

/// Residual tolerances used by `verify`.
inline constexpr double kConstraintTolerance = 1e-5;
inline constexpr double kPotentialTolerance = 1e-4;
inline constexpr double kPdeTolerance = 1e-4;

int cmd_solution(const ExperimentConfig& cfg, std::ostream& log);
int cmd_potential(const ExperimentConfig& cfg, std::ostream& log);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& log);
int cmd_propagate(const ExperimentConfig& cfg, std::ostream& log);
int cmd_mathieu_trace(const ExperimentConfig& cfg, std::ostream& log);

/// Validate, dispatch by name and map exceptions to exit codes; diagnostics
/// for failures go to `err`.
int run_command(std::string_view name, const ExperimentConfig& cfg, std::ostream& log,
                std::ostream& err);

}  // namespace cnls::app
