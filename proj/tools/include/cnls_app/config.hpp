#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cnls/family_spec.hpp"
#include "cnls/propagator.hpp"
#include "cnls/transform.hpp"

namespace cnls::app {

/// Everything a subcommand needs. Keys accepted by apply_setting are the
/// long flag names without the leading dashes; '_' and '-' are interchangeable.
struct ExperimentConfig {
  std::string family = "elliptic_ex1";
  int n = 1;
  double gamma = 6.0;
  double lambda = 0.5;
  double alpha = 0.1;
  double beta = 0.0;
  double epsilon = 0.5;
  double omega0 = 1.0;
  std::string drive = "periodic";  // periodic: f = 1; quasiperiodic: f = 1 + eps cos(omega0 t)

  double L = 0.0;  // 0 selects the command's default window
  std::size_t N = 1024;

  double t_end = 5.0;
  double dt = 5e-4;
  std::size_t stride = 500;  // snapshot / diagnostics spacing, in steps of dt

  double perturb = 0.03;
  std::uint64_t seed = 42;
  std::string perturb_model = "multiplicative";
  double threshold = kDefaultStabilityThreshold;

  std::string out = "cnls_out";
  std::string format = "csv";  // csv | json-lines
  bool override_dark = false;
  std::string mu_sign = "paper";

  std::vector<double> times;  // verify: explicit residual times
  bool corrupt_rho = false;   // verify: sensitivity check
};

/// Parse `value` into the field named `key`. Throws ArgumentError on an
/// unknown key or a malformed value.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Apply a `key = value` file on top of `base`. Blank lines and lines
/// starting with '#' are ignored.
ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

/// Throws ArgumentError (or the core error of the violated precondition)
/// before any computation or file output.
void validate(const ExperimentConfig& cfg);

FamilySpec family_spec(const ExperimentConfig& cfg);
MuSign mu_sign(const ExperimentConfig& cfg);
PerturbationModel perturbation_model(const ExperimentConfig& cfg);

/// Window for analytic dumps and residuals: 10 for the localized families,
/// 15 for the dark-bright family.
double analytic_half_length(const ExperimentConfig& cfg);
/// Window for split-step runs, which also needs dt |k|^2 <= pi.
double propagation_half_length(const ExperimentConfig& cfg);

/// Snapshot times 0, stride*dt, 2*stride*dt, ... up to and including t_end.
std::vector<double> snapshot_times(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);

}  // namespace cnls::app
