#pragma once

#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "lcav/sweep.hpp"

namespace lcav {

inline constexpr const char* kToolName = "lcav";
inline constexpr const char* kToolVersion = "0.1.0";

WatchElement parse_watch_element(const std::string& text);
std::string format_watch_element(const WatchElement& w);

/// Resolved description of one run: what was executed and where the
/// outputs went. Emitting and re-parsing a manifest reproduces the
/// identical resolved configuration.
struct RunManifest {
  std::string command;  // evolve | steady | sweep | validate
  SimulationConfig config;
  std::optional<SweepSpec> sweep;
  std::string version = kToolVersion;
  std::string created_at;  // not part of the hash
  std::map<std::string, std::string> outputs;  // not part of the hash

  /// Hex FNV-1a fingerprint of the resolved command + configuration.
  std::string hash() const;
};

nlohmann::json config_to_json(const SimulationConfig& cfg);
SimulationConfig config_from_json(const nlohmann::json& j);

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

bool operator==(const RunManifest& a, const RunManifest& b);

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest read_manifest(const std::string& path);

/// CSV header: t,O1,O2,O3,trace,n1,n2 — shortest round-trip decimals.
void write_trace_csv(const std::string& path, const PopulationTrace& trace);
/// CSV header: field1,kappa,O1_st,O2_st,converged,t_converged.
void write_sweep_csv(const std::string& path, const SweepTable& table);
/// Summary with the manifest hash and run results.
void write_summary_json(const std::string& path, const RunManifest& m,
                        const nlohmann::json& results);

/// Standalone matplotlib script plotting populations vs t~ from the CSV.
void emit_trace_plot_script(const std::string& path,
                            const std::string& csv_name);
/// Standalone matplotlib script: O2_st vs kappa per variant, with a zoomed
/// intermediate-kappa inset panel.
void emit_sweep_plot_script(const std::string& path,
                            const std::string& csv_name);

}  // namespace lcav
