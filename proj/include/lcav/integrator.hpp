#pragma once

#include <utility>
#include <vector>

#include "lcav/liouvillian.hpp"
#include "lcav/sector_op.hpp"

namespace lcav {

/// A watched density-matrix element (row, col).
using WatchElement = std::pair<BasisIndex, BasisIndex>;

struct SimulationConfig {
  FieldSpec field1{};  // defaults to fock:n=0 (vacuum)
  FieldSpec field2{};
  double kappa = 0.0;
  double dt = 0.005;
  double t_max = -1.0;  // < 0: auto, max(200, 50/kappa); 200 for kappa = 0
  int record_every = 1;
  double steady_tol_pop = 1e-8;     // population drift bound per unit t~
  double steady_tol_photon = 1e-6;  // residual mean photon bound
  int kmax = -1;  // < 0: auto from field statistics
  int mmax = -1;
  double eps_trunc = kDefaultTruncationTol;
  bool renormalize = false;  // renormalize truncated field states
  double leak_budget = 1e-4;
  std::vector<WatchElement> watch;

  /// Fill the auto fields and validate; throws ConfigError on violation of
  /// the stability bound dt * max(1, kappa * (kmax + mmax)) <= 0.5.
  SimulationConfig resolved() const;
};

struct TraceSample {
  double t;
  double o1, o2, o3;
  double trace;
  double n1, n2;  // mean photon numbers of fields 1 and 2
};

struct PopulationTrace {
  std::vector<TraceSample> samples;
};

struct SteadyStateResult {
  double O1_st = 0.0;  // p_{1,0,0;1,0,0} at detection
  double O2_st = 0.0;  // p_{2,0,0;2,0,0} at detection
  double O3 = 0.0;     // third-level population at detection
  double t_converged = -1.0;
  double residual_photon = 0.0;
  double residual_drift = 0.0;
  bool converged = false;
};

struct EvolutionResult {
  PopulationTrace trace;
  /// One time series per config.watch entry, sampled together with trace.
  std::vector<std::vector<cplx>> watch_traces;
  SteadyStateResult steady;
  // Diagnostics accumulated over the whole run.
  double max_hermiticity_defect = 0.0;
  double min_population = 0.0;
  double max_population = 0.0;
  double min_trace = 1.0;
  double max_trace = 1.0;
};

/// One classical RK4 update of the full density matrix, re-Hermitized.
/// Throws DivergenceError on NaN/overflow, IntegrityError if the
/// pre-Hermitization defect exceeds eps_herm.
DensityMatrix rk4_step(const DensityMatrix& dm, double dt, double kappa,
                       double eps_herm = 1e-10);

/// Evolve from t~ = 0 to t_max, sampling every record_every steps.
EvolutionResult evolve(const SimulationConfig& config);

/// Integrate until the steady-state criteria hold over a trailing window of
/// 10/kappa time units (or t_max is reached). Throws ConfigError for
/// kappa = 0: no steady state exists without losses.
EvolutionResult run_steady(const SimulationConfig& config);

SteadyStateResult detect_steady_state(const SimulationConfig& config);

}  // namespace lcav
