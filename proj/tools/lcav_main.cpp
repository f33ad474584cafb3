// lcav: Lindblad solver for a three-level Lambda system in two lossy
// cavity modes. Subcommands: evolve, steady, sweep, validate.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lcav/io.hpp"
#include "lcav/sweep.hpp"
#include "lcav/validation.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;
constexpr int kExitNoConvergence = 4;

std::string now_iso8601() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct CommonFlags {
  std::string field1, field2, config_path, out_dir = ".";
  double kappa = 0.0, dt = 0.0, tmax = 0.0, eps_trunc = 0.0;
  int kmax = 0, mmax = 0, record_every = 0;
  bool renormalize = false;
  std::vector<std::string> watch;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--field1", f.field1,
                  "field 1 spec, e.g. coherent:alpha=3.16228");
  cmd->add_option("--field2", f.field2, "field 2 spec, e.g. fock:n=0");
  cmd->add_option("--kappa", f.kappa, "scaled loss rate kappa/g >= 0");
  cmd->add_option("--dt", f.dt, "integration step in units of 1/g");
  cmd->add_option("--tmax", f.tmax, "end time (g*t); negative = auto");
  cmd->add_option("--kmax", f.kmax, "Fock truncation of field 1 (-1 = auto)");
  cmd->add_option("--mmax", f.mmax, "Fock truncation of field 2 (-1 = auto)");
  cmd->add_option("--record-every", f.record_every,
                  "sample the trace every N steps");
  cmd->add_option("--eps-trunc", f.eps_trunc,
                  "allowed initial-state norm deficit");
  cmd->add_flag("--renormalize", f.renormalize,
                "renormalize truncated initial field states");
  cmd->add_option("--watch-elements", f.watch,
                  "density-matrix elements \"n,k,m;n',k',m'\" to record");
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--out", f.out_dir, "output directory");
}

// Precedence: flags > config file > defaults.
lcav::SimulationConfig build_config(const CLI::App* cmd,
                                    const CommonFlags& f) {
  lcav::SimulationConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw lcav::ConfigError("cannot open config file " + f.config_path);
    json j;
    in >> j;
    cfg = lcav::config_from_json(j);
  }
  if (cmd->count("--field1")) cfg.field1 = lcav::parse_field_spec(f.field1);
  if (cmd->count("--field2")) cfg.field2 = lcav::parse_field_spec(f.field2);
  if (cmd->count("--kappa")) cfg.kappa = f.kappa;
  if (cmd->count("--dt")) cfg.dt = f.dt;
  if (cmd->count("--tmax")) cfg.t_max = f.tmax;
  if (cmd->count("--kmax")) cfg.kmax = f.kmax;
  if (cmd->count("--mmax")) cfg.mmax = f.mmax;
  if (cmd->count("--record-every")) cfg.record_every = f.record_every;
  if (cmd->count("--eps-trunc")) cfg.eps_trunc = f.eps_trunc;
  if (cmd->count("--renormalize")) cfg.renormalize = true;
  if (cmd->count("--watch-elements")) {
    cfg.watch.clear();
    for (const std::string& w : f.watch)
      cfg.watch.push_back(lcav::parse_watch_element(w));
  }
  return cfg;
}

json steady_json(const lcav::SteadyStateResult& s) {
  json j;
  j["converged"] = s.converged;
  j["t_converged"] = s.t_converged;
  j["O1_st"] = s.O1_st;
  j["O2_st"] = s.O2_st;
  j["O3"] = s.O3;
  j["residual_photon"] = s.residual_photon;
  j["residual_drift"] = s.residual_drift;
  return j;
}

int run_trace_command(const std::string& command, const CLI::App* cmd,
                      const CommonFlags& f) {
  lcav::RunManifest manifest;
  manifest.command = command;
  manifest.config = build_config(cmd, f).resolved();
  manifest.created_at = now_iso8601();

  const lcav::EvolutionResult result = command == "steady"
                                           ? lcav::run_steady(manifest.config)
                                           : lcav::evolve(manifest.config);

  fs::create_directories(f.out_dir);
  const std::string csv = (fs::path(f.out_dir) / "trace.csv").string();
  const std::string plot = (fs::path(f.out_dir) / "plot_trace.py").string();
  const std::string mpath = (fs::path(f.out_dir) / "manifest.json").string();
  const std::string spath = (fs::path(f.out_dir) / "summary.json").string();
  lcav::write_trace_csv(csv, result.trace);
  lcav::emit_trace_plot_script(plot, "trace.csv");
  manifest.outputs = {{"trace_csv", csv}, {"plot_script", plot},
                      {"summary", spath}};
  lcav::write_manifest(mpath, manifest);

  json results;
  results["samples"] = result.trace.samples.size();
  results["max_hermiticity_defect"] = result.max_hermiticity_defect;
  results["min_population"] = result.min_population;
  results["max_population"] = result.max_population;
  results["min_trace"] = result.min_trace;
  results["max_trace"] = result.max_trace;
  if (command == "steady") results["steady"] = steady_json(result.steady);
  lcav::write_summary_json(spath, manifest, results);

  if (command == "steady") {
    const auto& s = result.steady;
    if (!s.converged) {
      std::cerr << "steady: no convergence by t~ = "
                << manifest.config.t_max << " (residual photon "
                << s.residual_photon << ", drift " << s.residual_drift
                << ")\n";
      return kExitNoConvergence;
    }
    std::cout << "steady state at t~ = " << s.t_converged
              << ": O1_st = " << s.O1_st << ", O2_st = " << s.O2_st << "\n";
  } else {
    std::cout << "evolved to t~ = " << result.trace.samples.back().t << ", "
              << result.trace.samples.size() << " samples -> " << csv << "\n";
  }
  return kExitOk;
}

int run_sweep_command(const CLI::App* cmd, const CommonFlags& f,
                      const std::vector<std::string>& variants,
                      const std::vector<double>& grid, double lo, double hi,
                      int npoints, int jobs) {
  lcav::SweepSpec spec;
  spec.base = build_config(cmd, f);
  spec.field2 = spec.base.field2;
  spec.kappa_grid =
      cmd->count("--kappa-grid") ? grid : lcav::SweepSpec::log_grid(lo, hi, npoints);
  if (cmd->count("--variants"))
    for (const std::string& v : variants)
      spec.field1_variants.push_back(lcav::parse_field_spec(v));
  else
    spec.field1_variants.push_back(spec.base.field1);
  spec.jobs = jobs;

  lcav::RunManifest manifest;
  manifest.command = "sweep";
  manifest.config = spec.base;
  manifest.sweep = spec;
  manifest.created_at = now_iso8601();

  const lcav::SweepTable table = lcav::run_sweep(spec);

  fs::create_directories(f.out_dir);
  const std::string csv = (fs::path(f.out_dir) / "sweep.csv").string();
  const std::string plot = (fs::path(f.out_dir) / "plot_sweep.py").string();
  const std::string mpath = (fs::path(f.out_dir) / "manifest.json").string();
  const std::string spath = (fs::path(f.out_dir) / "summary.json").string();
  lcav::write_sweep_csv(csv, table);
  lcav::emit_sweep_plot_script(plot, "sweep.csv");
  manifest.outputs = {{"sweep_csv", csv}, {"plot_script", plot},
                      {"summary", spath}};
  lcav::write_manifest(mpath, manifest);

  int missed = 0;
  for (const auto& row : table.rows)
    if (!row.converged) ++missed;
  json results;
  results["rows"] = table.rows.size();
  results["non_converged"] = missed;
  lcav::write_summary_json(spath, manifest, results);

  std::cout << table.rows.size() << " sweep points -> " << csv;
  if (missed) std::cout << " (" << missed << " did not converge)";
  std::cout << "\n";
  return kExitOk;
}

int run_validate_command() {
  const lcav::ValidationReport report = lcav::run_validation_suite();
  for (const auto& item : report.items)
    std::cout << (item.pass ? "PASS" : "FAIL") << "  " << item.name << " ("
              << item.detail << ")\n";
  return report.all_pass() ? kExitOk : 1;
}

void print_defaults_manifest() {
  lcav::RunManifest manifest;
  manifest.command = "defaults";
  manifest.config = lcav::SimulationConfig{}.resolved();
  manifest.created_at = now_iso8601();
  std::cout << lcav::manifest_to_json(manifest).dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lindblad dynamics of a Lambda-type three-level system "
               "coupled to two lossy cavity modes"};
  app.require_subcommand(0, 1);

  CommonFlags ef, sf, wf;
  CLI::App* evolve = app.add_subcommand("evolve", "integrate to tmax");
  add_common(evolve, ef);
  CLI::App* steady =
      app.add_subcommand("steady", "integrate until steady state");
  add_common(steady, sf);

  CLI::App* sweep =
      app.add_subcommand("sweep", "steady states over a kappa grid");
  add_common(sweep, wf);
  std::vector<std::string> variants;
  std::vector<double> grid;
  double grid_lo = 0.05, grid_hi = 5.0;
  int grid_n = 12, jobs = 1;
  sweep->add_option("--kappa-grid", grid,
                    "explicit kappa values (strictly increasing)");
  sweep->add_option("--grid-lo", grid_lo, "log-grid lower bound");
  sweep->add_option("--grid-hi", grid_hi, "log-grid upper bound");
  sweep->add_option("--grid-n", grid_n, "number of log-grid points");
  sweep->add_option("--variants", variants,
                    "field 1 specs, one steady-state curve each");
  sweep->add_option("--jobs", jobs, "worker threads");

  CLI::App* validate =
      app.add_subcommand("validate", "run the built-in cross-check suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate_command();
    if (evolve->parsed()) return run_trace_command("evolve", evolve, ef);
    if (steady->parsed()) return run_trace_command("steady", steady, sf);
    if (sweep->parsed())
      return run_sweep_command(sweep, wf, variants, grid, grid_lo, grid_hi,
                               grid_n, jobs);
    print_defaults_manifest();
    return kExitOk;
  } catch (const lcav::DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const lcav::IntegrityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const lcav::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNoConvergence;
  } catch (const lcav::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
