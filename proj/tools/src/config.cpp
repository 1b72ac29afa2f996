#include "cnls_app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cnls/errors.hpp"
#include "cnls/families.hpp"
#include "cnls/grid.hpp"

namespace cnls::app {
namespace {

std::string normalize_key(std::string_view key) {
  std::string k(key);
  std::replace(k.begin(), k.end(), '_', '-');
  return k;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ArgumentError("config: cannot parse '" + std::string(value) + "' for " + std::string(key));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ArgumentError("config: expected a boolean for " + std::string(key));
}

std::vector<double> parse_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.push_back(parse_number<double>(key, item));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ArgumentError("config: " + what);
}

}  // namespace

void apply_setting(ExperimentConfig& cfg, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(trim(raw_key));
  const std::string_view value = trim(raw_value);
  if (key == "family") cfg.family = std::string(value);
  else if (key == "n") cfg.n = parse_number<int>(key, value);
  else if (key == "gamma") cfg.gamma = parse_number<double>(key, value);
  else if (key == "lambda") cfg.lambda = parse_number<double>(key, value);
  else if (key == "alpha") cfg.alpha = parse_number<double>(key, value);
  else if (key == "beta") cfg.beta = parse_number<double>(key, value);
  else if (key == "epsilon") cfg.epsilon = parse_number<double>(key, value);
  else if (key == "omega0") cfg.omega0 = parse_number<double>(key, value);
  else if (key == "drive") cfg.drive = std::string(value);
  else if (key == "L") cfg.L = parse_number<double>(key, value);
  else if (key == "N") cfg.N = parse_number<std::size_t>(key, value);
  else if (key == "t-end") cfg.t_end = parse_number<double>(key, value);
  else if (key == "dt") cfg.dt = parse_number<double>(key, value);
  else if (key == "stride") cfg.stride = parse_number<std::size_t>(key, value);
  else if (key == "perturb") cfg.perturb = parse_number<double>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "perturb-model") cfg.perturb_model = std::string(value);
  else if (key == "threshold") cfg.threshold = parse_number<double>(key, value);
  else if (key == "out") cfg.out = std::string(value);
  else if (key == "format") cfg.format = std::string(value);
  else if (key == "override-dark") cfg.override_dark = parse_bool(key, value);
  else if (key == "mu-sign") cfg.mu_sign = std::string(value);
  else if (key == "times") cfg.times = parse_list(key, value);
  else if (key == "corrupt-rho") cfg.corrupt_rho = parse_bool(key, value);
  else throw ArgumentError("config: unknown key '" + key + "'");
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("config: cannot open " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError("config: " + path.string() + ":" + std::to_string(lineno) +
                          ": expected key = value");
    }
    apply_setting(base, body.substr(0, eq), body.substr(eq + 1));
  }
  return base;
}

void validate(const ExperimentConfig& cfg) {
  family_kind_from_string(cfg.family);
  require(cfg.drive == "periodic" || cfg.drive == "quasiperiodic",
          "drive must be periodic or quasiperiodic");
  require(cfg.n >= 1, "n must be >= 1");
  require(cfg.gamma > 0.0 && std::isfinite(cfg.gamma), "gamma must be > 0");
  require(std::isfinite(cfg.epsilon), "epsilon must be finite");
  require(cfg.omega0 > 0.0 && std::isfinite(cfg.omega0), "omega0 must be > 0");
  require(cfg.L >= 0.0 && std::isfinite(cfg.L), "L must be > 0 (or 0 for the default)");
  require(cfg.N >= 8 && is_power_of_two(cfg.N), "N must be a power of two >= 8");
  require(cfg.t_end > 0.0 && std::isfinite(cfg.t_end), "t-end must be > 0");
  require(cfg.dt > 0.0 && cfg.dt <= cfg.t_end, "dt must be in (0, t-end]");
  require(cfg.stride >= 1, "stride must be >= 1");
  require(cfg.perturb >= 0.0 && cfg.perturb < kMaxPerturbation, "perturb must be in [0, 0.2)");
  require(cfg.threshold > 0.0, "threshold must be > 0");
  require(cfg.format == "csv" || cfg.format == "json-lines", "format must be csv or json-lines");
  require(cfg.mu_sign == "paper" || cfg.mu_sign == "flipped", "mu-sign must be paper or flipped");
  require(cfg.perturb_model == "multiplicative" || cfg.perturb_model == "additive",
          "perturb-model must be multiplicative or additive");
  require(!cfg.out.empty(), "out must name a directory");
  for (double t : cfg.times) require(t >= 0.0 && t <= cfg.t_end, "times must lie in [0, t-end]");
  family_spec(cfg).validate();
}

FamilySpec family_spec(const ExperimentConfig& cfg) {
  const Drive drive = cfg.drive == "quasiperiodic"
                          ? Drive{DriveKind::quasiperiodic, cfg.epsilon, cfg.omega0}
                          : Drive{};
  switch (family_kind_from_string(cfg.family)) {
    case FamilyKind::elliptic_ex1: return FamilySpec::elliptic(cfg.n, drive);
    case FamilyKind::sech_ex2: return FamilySpec::sech(cfg.gamma, drive);
    case FamilyKind::darkbright_ex3: return FamilySpec::dark_bright(cfg.lambda, cfg.alpha, cfg.beta);
  }
  throw ArgumentError("config: unknown family");
}

MuSign mu_sign(const ExperimentConfig& cfg) {
  return cfg.mu_sign == "flipped" ? MuSign::flipped : MuSign::paper;
}

PerturbationModel perturbation_model(const ExperimentConfig& cfg) {
  return cfg.perturb_model == "additive" ? PerturbationModel::additive
                                         : PerturbationModel::multiplicative;
}

double analytic_half_length(const ExperimentConfig& cfg) {
  if (cfg.L > 0.0) return cfg.L;
  return family_kind_from_string(cfg.family) == FamilyKind::darkbright_ex3 ? 15.0 : 10.0;
}

double propagation_half_length(const ExperimentConfig& cfg) {
  return cfg.L > 0.0 ? cfg.L : default_half_length(family_kind_from_string(cfg.family));
}

std::vector<double> snapshot_times(const ExperimentConfig& cfg) {
  const double spacing = static_cast<double>(cfg.stride) * cfg.dt;
  const auto count = static_cast<std::size_t>(std::floor(cfg.t_end / spacing + 1e-9));
  std::vector<double> out;
  for (std::size_t k = 0; k <= count; ++k) out.push_back(static_cast<double>(k) * spacing);
  if (cfg.t_end - out.back() > 1e-9 * cfg.t_end) out.push_back(cfg.t_end);
  return out;
}

nlohmann::json to_json(const ExperimentConfig& cfg) {
  return {
      {"family", cfg.family},   {"n", cfg.n},
      {"gamma", cfg.gamma},     {"lambda", cfg.lambda},
      {"alpha", cfg.alpha},     {"beta", cfg.beta},
      {"epsilon", cfg.epsilon}, {"omega0", cfg.omega0},
      {"drive", cfg.drive},     {"L", cfg.L},
      {"N", cfg.N},             {"t_end", cfg.t_end},
      {"dt", cfg.dt},           {"stride", cfg.stride},
      {"perturb", cfg.perturb}, {"seed", cfg.seed},
      {"perturb_model", cfg.perturb_model},
      {"threshold", cfg.threshold},
      {"out", cfg.out},         {"format", cfg.format},
      {"override_dark", cfg.override_dark},
      {"mu_sign", cfg.mu_sign}, {"times", cfg.times},
      {"corrupt_rho", cfg.corrupt_rho},
  };
}

}  // namespace cnls::app
