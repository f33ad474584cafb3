#include "lcav/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "lcav/util.hpp"

namespace lcav {

using nlohmann::json;

WatchElement parse_watch_element(const std::string& text) {
  const size_t semi = text.find(';');
  if (semi == std::string::npos)
    throw ConfigError("watch element '" + text +
                      "' missing ';' (expected n,k,m;n',k',m')");
  auto parse_triple = [&text](const std::string& part) {
    std::istringstream in(part);
    BasisIndex b;
    char c1 = 0, c2 = 0;
    if (!(in >> b.n >> c1 >> b.k >> c2 >> b.m) || c1 != ',' || c2 != ',')
      throw ConfigError("malformed basis index '" + part + "' in '" + text + "'");
    if (b.n < 1 || b.n > 3 || b.k < 0 || b.m < 0)
      throw ConfigError("basis index out of range in '" + text + "'");
    return b;
  };
  return {parse_triple(text.substr(0, semi)), parse_triple(text.substr(semi + 1))};
}

std::string format_watch_element(const WatchElement& w) {
  std::ostringstream os;
  os << w.first.n << ',' << w.first.k << ',' << w.first.m << ';' << w.second.n
     << ',' << w.second.k << ',' << w.second.m;
  return os.str();
}

json config_to_json(const SimulationConfig& cfg) {
  json j;
  j["field1"] = format_field_spec(cfg.field1);
  j["field2"] = format_field_spec(cfg.field2);
  j["kappa"] = cfg.kappa;
  j["dt"] = cfg.dt;
  j["t_max"] = cfg.t_max;
  j["record_every"] = cfg.record_every;
  j["steady_tol_pop"] = cfg.steady_tol_pop;
  j["steady_tol_photon"] = cfg.steady_tol_photon;
  j["kmax"] = cfg.kmax;
  j["mmax"] = cfg.mmax;
  j["eps_trunc"] = cfg.eps_trunc;
  j["renormalize"] = cfg.renormalize;
  j["leak_budget"] = cfg.leak_budget;
  json watch = json::array();
  for (const WatchElement& w : cfg.watch) watch.push_back(format_watch_element(w));
  j["watch"] = watch;
  return j;
}

SimulationConfig config_from_json(const json& j) {
  SimulationConfig cfg;
  if (j.contains("field1")) cfg.field1 = parse_field_spec(j.at("field1"));
  if (j.contains("field2")) cfg.field2 = parse_field_spec(j.at("field2"));
  auto get = [&j](const char* key, auto& target) {
    if (j.contains(key)) target = j.at(key).get<std::decay_t<decltype(target)>>();
  };
  get("kappa", cfg.kappa);
  get("dt", cfg.dt);
  get("t_max", cfg.t_max);
  get("record_every", cfg.record_every);
  get("steady_tol_pop", cfg.steady_tol_pop);
  get("steady_tol_photon", cfg.steady_tol_photon);
  get("kmax", cfg.kmax);
  get("mmax", cfg.mmax);
  get("eps_trunc", cfg.eps_trunc);
  get("renormalize", cfg.renormalize);
  get("leak_budget", cfg.leak_budget);
  if (j.contains("watch")) {
    for (const auto& w : j.at("watch"))
      cfg.watch.push_back(parse_watch_element(w.get<std::string>()));
  }
  return cfg;
}

namespace {

json sweep_to_json(const SweepSpec& s) {
  json j;
  j["kappa_grid"] = s.kappa_grid;
  json variants = json::array();
  for (const FieldSpec& f : s.field1_variants)
    variants.push_back(format_field_spec(f));
  j["field1_variants"] = variants;
  j["field2"] = format_field_spec(s.field2);
  j["base"] = config_to_json(s.base);
  j["jobs"] = s.jobs;
  return j;
}

SweepSpec sweep_from_json(const json& j) {
  SweepSpec s;
  s.kappa_grid = j.at("kappa_grid").get<std::vector<double>>();
  for (const auto& v : j.at("field1_variants"))
    s.field1_variants.push_back(parse_field_spec(v.get<std::string>()));
  s.field2 = parse_field_spec(j.at("field2"));
  s.base = config_from_json(j.at("base"));
  if (j.contains("jobs")) s.jobs = j.at("jobs").get<int>();
  return s;
}

json hashed_subset(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["version"] = m.version;
  j["config"] = config_to_json(m.config);
  if (m.sweep) j["sweep"] = sweep_to_json(*m.sweep);
  return j;
}

}  // namespace

std::string RunManifest::hash() const {
  std::ostringstream os;
  os << std::hex << fnv1a64(hashed_subset(*this).dump());
  return os.str();
}

json manifest_to_json(const RunManifest& m) {
  json j = hashed_subset(m);
  j["created_at"] = m.created_at;
  j["outputs"] = m.outputs;
  j["hash"] = m.hash();
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  m.version = j.at("version").get<std::string>();
  m.config = config_from_json(j.at("config"));
  if (j.contains("sweep") && !j.at("sweep").is_null())
    m.sweep = sweep_from_json(j.at("sweep"));
  if (j.contains("created_at")) m.created_at = j.at("created_at").get<std::string>();
  if (j.contains("outputs"))
    m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
  return m;
}

bool operator==(const RunManifest& a, const RunManifest& b) {
  return hashed_subset(a) == hashed_subset(b);
}

void write_manifest(const std::string& path, const RunManifest& m) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << manifest_to_json(m).dump(2) << '\n';
  if (!out) throw ConfigError("write failed: " + path);
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed manifest " + path + ": " + e.what());
  }
  return manifest_from_json(j);
}

void write_trace_csv(const std::string& path, const PopulationTrace& trace) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << "t,O1,O2,O3,trace,n1,n2\n";
  for (const TraceSample& s : trace.samples) {
    out << fmt_double(s.t) << ',' << fmt_double(s.o1) << ',' << fmt_double(s.o2)
        << ',' << fmt_double(s.o3) << ',' << fmt_double(s.trace) << ','
        << fmt_double(s.n1) << ',' << fmt_double(s.n2) << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

void write_sweep_csv(const std::string& path, const SweepTable& table) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << "field1,kappa,O1_st,O2_st,converged,t_converged\n";
  for (const SweepRow& r : table.rows) {
    out << r.field1_label << ',' << fmt_double(r.kappa) << ','
        << fmt_double(r.O1_st) << ',' << fmt_double(r.O2_st) << ','
        << (r.converged ? "true" : "false") << ',' << fmt_double(r.t_converged)
        << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

void write_summary_json(const std::string& path, const RunManifest& m,
                        const json& results) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  json j;
  j["tool"] = kToolName;
  j["version"] = m.version;
  j["command"] = m.command;
  j["manifest_hash"] = m.hash();
  j["results"] = results;
  out << j.dump(2) << '\n';
  if (!out) throw ConfigError("write failed: " + path);
}

void emit_trace_plot_script(const std::string& path,
                            const std::string& csv_name) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << R"py(#!/usr/bin/env python3
"""Plot electronic populations vs dimensionless time from a trace CSV."""
import csv
import sys

import matplotlib.pyplot as plt

csv_path = sys.argv[1] if len(sys.argv) > 1 else ")py" << csv_name << R"py("
t, o1, o2, o3 = [], [], [], []
with open(csv_path) as fh:
    for row in csv.DictReader(fh):
        t.append(float(row["t"]))
        o1.append(float(row["O1"]))
        o2.append(float(row["O2"]))
        o3.append(float(row["O3"]))

fig, ax = plt.subplots(figsize=(7, 4))
ax.plot(t, o1, label="$O_1$")
ax.plot(t, o2, label="$O_2$")
ax.plot(t, o3, label="$O_3$")
ax.set_xlabel(r"$\tilde{t}$")
ax.set_ylabel("population")
ax.legend()
fig.tight_layout()
fig.savefig(csv_path.rsplit(".", 1)[0] + ".png", dpi=160)
)py";
  if (!out) throw ConfigError("write failed: " + path);
}

void emit_sweep_plot_script(const std::string& path,
                            const std::string& csv_name) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << R"py(#!/usr/bin/env python3
"""Plot O2_st vs kappa per field variant, with a zoomed intermediate panel."""
import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt

csv_path = sys.argv[1] if len(sys.argv) > 1 else ")py" << csv_name << R"py("
series = defaultdict(lambda: ([], []))
with open(csv_path) as fh:
    for row in csv.DictReader(fh):
        xs, ys = series[row["field1"]]
        xs.append(float(row["kappa"]))
        ys.append(float(row["O2_st"]))

fig, (ax, zoom) = plt.subplots(1, 2, figsize=(10, 4))
for label, (xs, ys) in series.items():
    ax.plot(xs, ys, marker="o", label=label)
    zoom.plot(xs, ys, marker="o", label=label)
ax.set_xscale("log")
ax.set_xlabel(r"$\tilde{\kappa}$")
ax.set_ylabel(r"$O_{2,\mathrm{st}}$")
ax.legend(fontsize=8)
zoom.set_xlim(0.5, 2.0)
zoom.set_xlabel(r"$\tilde{\kappa}$ (intermediate regime)")
fig.tight_layout()
fig.savefig(csv_path.rsplit(".", 1)[0] + ".png", dpi=160)
)py";
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace lcav
