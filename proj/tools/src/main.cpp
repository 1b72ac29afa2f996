#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cnls/version.hpp"
#include "cnls_app/commands.hpp"
#include "cnls_app/config.hpp"

namespace {

struct Subcommand {
  const char* name;
  const char* help;
};

constexpr Subcommand kCommands[] = {
    {"solution", "Analytic psi1, psi2 snapshots on a grid"},
    {"potential", "v1, v2 and g_jk lattices, plus a zoom on |x| <= 2"},
    {"verify", "Constraint, potential and full-equation residual suites"},
    {"propagate", "Unperturbed and perturbed split-step runs with a stability verdict"},
    {"mathieu-trace", "chi(t), chi'(t) and a(t) for the selected family"},
};

// Long flag -> config key. Values are forwarded verbatim to apply_setting,
// after any --config file, so flags always win.
const std::vector<std::pair<std::string, std::string>> kValueFlags = {
    {"--family", "elliptic_ex1 | sech_ex2 | darkbright_ex3 (or ex1, ex2, ex3)"},
    {"--n", "elliptic mode index"},
    {"--gamma", "sech family width"},
    {"--lambda", "dark-bright shape parameter, > -1"},
    {"--alpha", "dark-bright chi amplitude of sin t"},
    {"--beta", "dark-bright chi amplitude of sin(sqrt2 t)"},
    {"--epsilon", "drive amplitude"},
    {"--omega0", "drive frequency"},
    {"--drive", "periodic (f = 1) | quasiperiodic (f = 1 + eps cos omega0 t)"},
    {"--L", "half-width of the x window"},
    {"--N", "grid points (power of two)"},
    {"--t-end", "final time"},
    {"--dt", "time step"},
    {"--stride", "snapshot / diagnostic spacing in steps"},
    {"--perturb", "perturbation amplitude"},
    {"--perturb-model", "multiplicative | additive"},
    {"--seed", "RNG seed"},
    {"--threshold", "stability threshold on the profile error"},
    {"--out", "output directory"},
    {"--format", "csv | json-lines"},
    {"--mu-sign", "paper | flipped"},
    {"--times", "comma-separated residual times for verify"},
};

const std::vector<std::pair<std::string, std::string>> kBoolFlags = {
    {"--override-dark", "allow propagating the dark-bright family"},
    {"--corrupt-rho", "verify: perturb rho to check the verifier fails"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-transform solitons of coupled modulated cubic NLS equations"};
  app.set_version_flag("--version", std::string(cnls::kVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::pair<std::string, std::string>> given;
  std::string chosen;

  for (const auto& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    sub->add_option("--config", config_path, "key = value file applied before flags");
    for (const auto& [flag, help] : kValueFlags) {
      const std::string key = flag.substr(2);
      sub->add_option_function<std::string>(
          flag, [&given, key](const std::string& v) { given.emplace_back(key, v); }, help);
    }
    for (const auto& [flag, help] : kBoolFlags) {
      const std::string key = flag.substr(2);
      sub->add_flag_function(
          flag, [&given, key](std::int64_t) { given.emplace_back(key, "true"); }, help);
    }
    sub->callback([&chosen, name = std::string(cmd.name)] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cnls::app::kExitValidation;
  }

  cnls::app::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = cnls::app::load_config_file(config_path, cfg);
    for (const auto& [key, value] : given) cnls::app::apply_setting(cfg, key, value);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cnls::app::kExitValidation;
  }
  return cnls::app::run_command(chosen, cfg, std::cout, std::cerr);
}
