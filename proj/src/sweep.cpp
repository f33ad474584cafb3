#include "lcav/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <mutex>
#include <thread>

namespace lcav {

std::vector<double> SweepSpec::log_grid(double lo, double hi, int n) {
  if (lo <= 0.0 || hi <= lo || n < 2)
    throw ConfigError("log_grid requires 0 < lo < hi and n >= 2");
  std::vector<double> g(n);
  const double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(i * step);
  return g;
}

namespace {

void validate(const SweepSpec& spec) {
  if (spec.kappa_grid.empty()) throw ConfigError("sweep: empty kappa grid");
  double prev = 0.0;
  for (double k : spec.kappa_grid) {
    if (k <= prev)
      throw ConfigError("sweep: kappa grid must be strictly increasing and > 0");
    prev = k;
  }
  if (spec.field1_variants.empty())
    throw ConfigError("sweep: no field1 variants");
}

SimulationConfig point_config(const SweepSpec& spec, std::size_t variant,
                              std::size_t grid) {
  SimulationConfig cfg = spec.base;
  cfg.field1 = spec.field1_variants[variant];
  cfg.field2 = spec.field2;
  cfg.kappa = spec.kappa_grid[grid];
  cfg.t_max = spec.base.t_max;  // may stay auto
  // Keep the stability bound at large kappa by shrinking dt per point.
  const SimulationConfig probe = [&] {
    SimulationConfig p = cfg;
    p.dt = 1e-9;  // always stable; used only to resolve kmax/mmax
    return p.resolved();
  }();
  const double stiffness = std::max(1.0, cfg.kappa * (probe.kmax + probe.mmax));
  cfg.dt = std::min(cfg.dt, 0.5 / stiffness);
  return cfg;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec) {
  validate(spec);
  const std::size_t nv = spec.field1_variants.size();
  const std::size_t ng = spec.kappa_grid.size();

  SweepTable table;
  table.rows.resize(nv * ng);

  // Work queue ordered longest-expected-first (small kappa runs longest);
  // results land at fixed (variant, grid) slots, so the schedule cannot
  // change the output.
  std::vector<std::size_t> order(nv * ng);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return spec.kappa_grid[a % ng] < spec.kappa_grid[b % ng] ||
           (spec.kappa_grid[a % ng] == spec.kappa_grid[b % ng] && a < b);
  });

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t w = next.fetch_add(1);
      if (w >= order.size()) return;
      const std::size_t job = order[w];
      try {
        const std::size_t variant = job / ng;
        const std::size_t grid = job % ng;
        const SimulationConfig cfg = point_config(spec, variant, grid);
        const SteadyStateResult st = detect_steady_state(cfg);
        SweepRow& row = table.rows[job];
        row.field1_label = spec.field1_variants[variant].label();
        row.kappa = spec.kappa_grid[grid];
        row.O1_st = st.O1_st;
        row.O2_st = st.O2_st;
        row.converged = st.converged;
        row.t_converged = st.t_converged;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int jobs = std::max(1, spec.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

}  // namespace lcav
