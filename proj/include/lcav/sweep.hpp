#pragma once

#include <string>
#include <vector>

#include "lcav/integrator.hpp"

namespace lcav {

struct SweepSpec {
  std::vector<double> kappa_grid;  // strictly increasing, all > 0
  std::vector<FieldSpec> field1_variants;
  FieldSpec field2{};  // fock:n=0
  SimulationConfig base;
  int jobs = 1;

  /// Default demo grid: n log-spaced points on [lo, hi].
  static std::vector<double> log_grid(double lo, double hi, int n);
};

struct SweepRow {
  std::string field1_label;
  double kappa = 0.0;
  double O1_st = 0.0;
  double O2_st = 0.0;
  bool converged = false;
  double t_converged = -1.0;
};

struct SweepTable {
  std::vector<SweepRow> rows;  // ordered by (variant index, grid index)
};

/// One independent detect_steady_state run per (variant, kappa) pair.
/// Individual non-convergence is recorded per row and never aborts the
/// sweep. The per-point dt is lowered when needed to keep the stability
/// bound at large kappa.
SweepTable run_sweep(const SweepSpec& spec);

}  // namespace lcav
