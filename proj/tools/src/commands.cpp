#include "cnls_app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "cnls/errors.hpp"
#include "cnls/families.hpp"
#include "cnls/propagator.hpp"
#include "cnls/transform.hpp"
#include "cnls/version.hpp"
#include "cnls_app/output.hpp"

namespace cnls::app {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Width traces are always sampled at this spacing, independent of cfg.dt.
constexpr double kTraceStep = 1e-4;
constexpr std::size_t kZoomPoints = 401;
constexpr double kZoomHalfWidth = 2.0;

json family_json(const FamilySpec& f) {
  return {{"kind", std::string(to_string(f.kind))},
          {"n", f.n},
          {"gamma", f.gamma},
          {"lambda", f.lambda},
          {"alpha", f.alpha},
          {"beta", f.beta},
          {"drive", {{"kind", f.drive.kind == DriveKind::constant ? "constant" : "quasiperiodic"},
                     {"epsilon", f.drive.epsilon},
                     {"omega0", f.drive.omega0}}},
          {"G", f.G},
          {"mu", f.mu}};
}

json base_meta(std::string_view command, const ExperimentConfig& cfg) {
  return {{"command", std::string(command)},
          {"version", std::string(kVersion)},
          {"seed", cfg.seed},
          {"config", to_json(cfg)},
          {"family", family_json(family_spec(cfg))}};
}

std::string format_index(std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04zu", k);
  return buf;
}

std::shared_ptr<const ModulationTrace> trace_for(const FamilySpec& family, double t_end) {
  return std::make_shared<const ModulationTrace>(make_trace(family, t_end, kTraceStep));
}

std::vector<double> residual_times(const ExperimentConfig& cfg) {
  if (!cfg.times.empty()) return cfg.times;
  std::mt19937_64 gen(cfg.seed);
  std::vector<double> out;
  for (int i = 0; i < 5; ++i) {
    out.push_back(cfg.t_end * static_cast<double>(gen() >> 11) * 0x1.0p-53);
  }
  return out;
}

void write_manifest(const fs::path& dir, json manifest) {
  atomic_write(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

int cmd_solution(const ExperimentConfig& cfg, std::ostream& log) {
  const FamilySpec family = family_spec(cfg);
  const fs::path dir(cfg.out);
  ensure_output_dir(dir);
  const SpatialGrid grid(analytic_half_length(cfg), cfg.N);
  const auto trace = trace_for(family, cfg.t_end);
  const auto times = snapshot_times(cfg);

  json meta = base_meta("solution", cfg);
  meta["grid"] = {{"L", grid.half_length()}, {"N", grid.size()}};
  json files = json::array();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const std::string name = "solution_" + format_index(k) + table_extension(cfg.format);
    json file_meta = meta;
    file_meta["t"] = times[k];
    atomic_write(dir / name, render_table(csv::fields_table(assemble(family, grid, times[k], *trace)),
                                          cfg.format, file_meta));
    files.push_back({{"t", times[k]}, {"file", name}});
  }
  meta["times"] = times;
  meta["files"] = files;
  write_manifest(dir, meta);
  log << "solution: wrote " << times.size() << " snapshots to " << dir.string() << "\n";
  return kExitPass;
}

int cmd_potential(const ExperimentConfig& cfg, std::ostream& log) {
  const FamilySpec family = family_spec(cfg);
  const fs::path dir(cfg.out);
  ensure_output_dir(dir);
  const SpatialGrid grid(analytic_half_length(cfg), cfg.N);
  const CoefficientSampler sampler(family, trace_for(family, cfg.t_end), mu_sign(cfg));
  const auto times = snapshot_times(cfg);

  std::vector<double> zoom(kZoomPoints);
  for (std::size_t i = 0; i < kZoomPoints; ++i) {
    zoom[i] = -kZoomHalfWidth + 2.0 * kZoomHalfWidth * static_cast<double>(i) /
                                    static_cast<double>(kZoomPoints - 1);
  }

  json meta = base_meta("potential", cfg);
  meta["grid"] = {{"L", grid.half_length()}, {"N", grid.size()}};
  meta["times"] = times;
  const std::string full = "potential" + table_extension(cfg.format);
  const std::string small = "potential_zoom" + table_extension(cfg.format);
  json zoom_meta = meta;
  zoom_meta["grid"] = {{"x_min", -kZoomHalfWidth}, {"x_max", kZoomHalfWidth}, {"points", kZoomPoints}};
  atomic_write(dir / full,
               render_table(csv::coefficients_table(sampler, grid.x(), times), cfg.format, meta));
  atomic_write(dir / small,
               render_table(csv::coefficients_table(sampler, zoom, times), cfg.format, zoom_meta));
  meta["files"] = {full, small};
  write_manifest(dir, meta);
  log << "potential: wrote " << full << " and " << small << " to " << dir.string() << "\n";
  return kExitPass;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& log) {
  const FamilySpec family = family_spec(cfg);
  const fs::path dir(cfg.out);
  ensure_output_dir(dir);
  const auto trace = trace_for(family, cfg.t_end);
  const CoefficientSampler sampler(family, trace, mu_sign(cfg));

  TransformFields fields = transform_fields(family, trace);
  if (cfg.corrupt_rho) {
    // rho^2 zeta_x is then no longer x-independent, which the flux constraint must catch.
    fields.rho = [rho = fields.rho](double x, double t) { return rho(x, t) * (1.0 + 0.01 * x); };
  }

  json checks = json::array();
  json failed = json::array();
  auto check = [&](const std::string& name, double value, double tol) {
    const bool pass = std::isfinite(value) && value <= tol;
    checks.push_back({{"name", name}, {"value", value}, {"tolerance", tol}, {"pass", pass}});
    if (!pass) failed.push_back(name);
    log << (pass ? "PASS " : "FAIL ") << name << " = " << value << " (tol " << tol << ")\n";
  };

  const ConstraintLattice lattice = reference_lattice(family, *trace);
  const ConstraintReport cr = verify_constraints(fields, lattice);
  check("constraint.continuity", cr.continuity, kConstraintTolerance);
  check("constraint.transport", cr.transport, kConstraintTolerance);
  check("constraint.flux", cr.flux, kConstraintTolerance);

  const auto [dv1, dv2] = potential_cross_check(sampler, lattice);
  check("potential.v1", dv1, kPotentialTolerance);
  check("potential.v2", dv2, kPotentialTolerance);

  const SpatialGrid grid(analytic_half_length(cfg), cfg.N);
  const auto times = residual_times(cfg);
  for (const double t : times) {
    const PdeResidual r = pde_residual(
        sampler, [&](double tt) { return assemble(family, grid, tt, *trace); }, grid, t);
    check("pde.eq1@t=" + csv::format(t), r.eq1, kPdeTolerance);
    check("pde.eq2@t=" + csv::format(t), r.eq2, kPdeTolerance);
  }

  json report = base_meta("verify", cfg);
  report["grid"] = {{"L", grid.half_length()}, {"N", grid.size()}};
  report["lattice"] = {{"slices", lattice.slices.size()}, {"nx", lattice.nx}};
  report["times"] = times;
  report["checks"] = checks;
  report["failed"] = failed;
  report["pass"] = failed.empty();
  atomic_write(dir / "verify.json", report.dump(2) + "\n");
  log << "verify: " << (failed.empty() ? "all checks passed" : "FAILED") << "\n";
  return failed.empty() ? kExitPass : kExitVerificationFailure;
}

int cmd_propagate(const ExperimentConfig& cfg, std::ostream& log) {
  const FamilySpec family = family_spec(cfg);
  if (family.has_dark_background() && !cfg.override_dark) {
    throw RefusalError(
        "propagate: darkbright_ex3 has a non-vanishing dark background; the split-step "
        "method is known to fail for it. Use verify for this family, or pass --override-dark");
  }
  const SpatialGrid grid(propagation_half_length(cfg), cfg.N);
  const auto trace = trace_for(family, cfg.t_end);
  PropagationConfig pc;
  pc.dt = cfg.dt;
  pc.t_end = cfg.t_end;
  pc.grid = grid;
  pc.rng_seed = cfg.seed;
  pc.perturbation_model = perturbation_model(cfg);
  pc.coefficients = std::make_shared<const CoefficientSampler>(family, trace, mu_sign(cfg));
  pc.record_stride = cfg.stride;
  pc.allow_dark_background = cfg.override_dark;
  pc.validate();

  const fs::path dir(cfg.out);
  ensure_output_dir(dir);

  const FieldPair initial = assemble(family, grid, 0.0, *trace);
  const ReferenceFn reference = [&](double t) { return assemble(family, grid, t, *trace); };

  SplitStepPropagator clean(pc);
  const DiagnosticsTrace base = clean.propagate(initial, reference);
  pc.perturbation_amplitude = cfg.perturb;
  SplitStepPropagator noisy(pc);
  const DiagnosticsTrace perturbed = noisy.propagate(initial, reference);

  const StabilityVerdict v0 = stability_verdict(base, cfg.threshold);
  const StabilityVerdict v1 = stability_verdict(perturbed, cfg.threshold);
  auto drift = [](const DiagnosticsTrace& d) {
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
      m = std::max({m, std::abs(d.norm1[i] / d.norm1[0] - 1.0), std::abs(d.norm2[i] / d.norm2[0] - 1.0)});
    }
    return m;
  };

  json meta = base_meta("propagate", cfg);
  meta["grid"] = {{"L", grid.half_length()}, {"N", grid.size()}};
  meta["effective_dt"] = clean.effective_dt();
  const std::string ext = table_extension(cfg.format);
  json m0 = meta;
  m0["run"] = "unperturbed";
  json m1 = meta;
  m1["run"] = "perturbed";
  atomic_write(dir / ("diagnostics_unperturbed" + ext),
               render_table(csv::diagnostics_table(base), cfg.format, m0));
  atomic_write(dir / ("diagnostics_perturbed" + ext),
               render_table(csv::diagnostics_table(perturbed), cfg.format, m1));

  json verdict = meta;
  verdict["unperturbed"] = {{"max_profile_error", v0.max_error},
                            {"time_of_max", v0.time_of_max},
                            {"max_norm_drift", drift(base)}};
  verdict["perturbed"] = {{"stable", v1.stable},
                          {"max_profile_error", v1.max_error},
                          {"time_of_max", v1.time_of_max},
                          {"component", v1.component},
                          {"max_norm_drift", drift(perturbed)},
                          {"summary", v1.summary}};
  verdict["files"] = {"diagnostics_unperturbed" + ext, "diagnostics_perturbed" + ext};
  atomic_write(dir / "verdict.json", verdict.dump(2) + "\n");
  write_manifest(dir, verdict);

  log << "unperturbed: max profile error " << v0.max_error << ", norm drift " << drift(base) << "\n";
  log << "perturbed (" << cfg.perturb << ", seed " << cfg.seed << "): " << v1.summary << "\n";
  return v1.stable ? kExitPass : kExitVerificationFailure;
}

int cmd_mathieu_trace(const ExperimentConfig& cfg, std::ostream& log) {
  const FamilySpec family = family_spec(cfg);
  const fs::path dir(cfg.out);
  ensure_output_dir(dir);
  const ModulationTrace trace = make_trace(family, cfg.t_end, cfg.dt);
  json meta = base_meta("mathieu-trace", cfg);
  meta["source"] = std::string(to_string(trace.source()));
  meta["step"] = trace.step();
  const std::string name = "trace" + table_extension(cfg.format);
  atomic_write(dir / name, render_table(csv::trace_table(trace), cfg.format, meta));
  meta["files"] = {name};
  write_manifest(dir, meta);
  log << "mathieu-trace: " << trace.size() << " samples (" << to_string(trace.source())
      << ") written to " << (dir / name).string() << "\n";
  return kExitPass;
}

int run_command(std::string_view name, const ExperimentConfig& cfg, std::ostream& log,
                std::ostream& err) {
  try {
    validate(cfg);
    if (name == "solution") return cmd_solution(cfg, log);
    if (name == "potential") return cmd_potential(cfg, log);
    if (name == "verify") return cmd_verify(cfg, log);
    if (name == "propagate") return cmd_propagate(cfg, log);
    if (name == "mathieu-trace") return cmd_mathieu_trace(cfg, log);
    err << "unknown command: " << name << "\n";
    return kExitValidation;
  } catch (const DivergenceError& e) {
    err << "divergence at t = " << e.time() << ": " << e.what() << "\n";
    return kExitDivergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace cnls::app
