#include "lcav/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcav {

SimulationConfig SimulationConfig::resolved() const {
  SimulationConfig r = *this;
  if (r.kappa < 0.0) throw ConfigError("kappa must be >= 0");
  if (r.dt <= 0.0) throw ConfigError("dt must be > 0");
  if (r.record_every < 1) throw ConfigError("record_every must be >= 1");
  if (r.eps_trunc <= 0.0) throw ConfigError("eps_trunc must be > 0");

  const double nbar = r.field1.mean_photon() + r.field2.mean_photon();
  const int base_trunc = default_truncation(nbar);
  // Photons migrate between the fields, so both truncations default to the
  // bound for the combined statistics (or any explicit per-field override).
  const int auto_trunc =
      std::max(r.field1.kmax_override.value_or(base_trunc),
               r.field2.kmax_override.value_or(base_trunc));
  if (r.kmax < 0) r.kmax = auto_trunc;
  if (r.mmax < 0) r.mmax = auto_trunc;

  if (r.t_max < 0.0)
    r.t_max = r.kappa > 0.0 ? std::max(200.0, 50.0 / r.kappa) : 200.0;

  const double stiffness = std::max(1.0, r.kappa * (r.kmax + r.mmax));
  if (r.dt * stiffness > 0.5) {
    std::ostringstream os;
    os << "stability bound violated: dt * max(1, kappa*(kmax+mmax)) = "
       << r.dt * stiffness << " > 0.5; reduce dt to at most "
       << 0.5 / stiffness;
    throw ConfigError(os.str());
  }
  return r;
}

DensityMatrix rk4_step(const DensityMatrix& dm, double dt, double kappa,
                       double eps_herm) {
  const int kmax = dm.basis().kmax();
  const int mmax = dm.basis().mmax();
  DensityMatrix k1(kmax, mmax), k2(kmax, mmax), k3(kmax, mmax), k4(kmax, mmax);
  DensityMatrix tmp(kmax, mmax), out(kmax, mmax);
  const std::size_t sz = dm.data().size();

  apply_liouvillian(dm, kappa, k1);
  for (std::size_t i = 0; i < sz; ++i)
    tmp.data()[i] = dm.data()[i] + 0.5 * dt * k1.data()[i];
  apply_liouvillian(tmp, kappa, k2);
  for (std::size_t i = 0; i < sz; ++i)
    tmp.data()[i] = dm.data()[i] + 0.5 * dt * k2.data()[i];
  apply_liouvillian(tmp, kappa, k3);
  for (std::size_t i = 0; i < sz; ++i)
    tmp.data()[i] = dm.data()[i] + dt * k3.data()[i];
  apply_liouvillian(tmp, kappa, k4);
  for (std::size_t i = 0; i < sz; ++i) {
    out.data()[i] = dm.data()[i] +
                    (dt / 6.0) * (k1.data()[i] + 2.0 * k2.data()[i] +
                                  2.0 * k3.data()[i] + k4.data()[i]);
    if (!std::isfinite(out.data()[i].real()) ||
        !std::isfinite(out.data()[i].imag()))
      throw DivergenceError("rk4_step: non-finite element", 0);
  }
  const double defect = out.hermiticity_defect();
  if (defect > eps_herm) {
    std::ostringstream os;
    os << "rk4_step: hermiticity defect " << defect << " exceeds " << eps_herm;
    throw IntegrityError(os.str());
  }
  out.hermitize();
  return out;
}

namespace {

SectorOperator make_operator(const SimulationConfig& cfg,
                             std::vector<cplx>& x_out) {
  AmplitudeVector psi1 = cfg.field1.amplitudes(cfg.kmax, cfg.eps_trunc);
  AmplitudeVector psi2 = cfg.field2.amplitudes(cfg.mmax, cfg.eps_trunc);
  if (cfg.renormalize) {
    psi1 = psi1.renormalized();
    psi2 = psi2.renormalized();
  }
  const int n0 = psi1.max_support() + psi2.max_support();

  std::vector<int> dset{0};
  for (const WatchElement& w : cfg.watch)
    dset.push_back(Basis::excitation(w.first) - Basis::excitation(w.second));

  Basis basis(cfg.kmax, cfg.mmax);
  SectorOperator op(basis, n0, std::move(dset), cfg.kappa);

  x_out.assign(op.size(), cplx{0.0, 0.0});
  const auto& elems = op.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const auto& [r, c] = elems[i];
    if (r.n != 1 || c.n != 1) continue;
    x_out[i] = psi1.amps[r.k] * psi2.amps[r.m] *
               std::conj(psi1.amps[c.k] * psi2.amps[c.m]);
  }
  return op;
}

void check_finite(const std::vector<cplx>& x, long step) {
  for (const cplx& v : x) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "evolution diverged (non-finite element) at step " << step;
      throw DivergenceError(os.str(), step);
    }
  }
}

/// Steady-state test over a trailing window: every sample within the window
/// has (n1 + n2) below the photon tolerance and every population slope
/// between consecutive samples is below the drift tolerance.
struct SteadyDetector {
  double window;
  double tol_photon;
  double tol_pop;

  bool check(const std::vector<TraceSample>& samples, double& residual_photon,
             double& residual_drift) const {
    if (samples.size() < 2) return false;
    const double t_now = samples.back().t;
    if (t_now < window) return false;
    const double t_from = t_now - window;
    std::size_t first = samples.size();
    while (first > 0 && samples[first - 1].t >= t_from) --first;
    if (first == 0) return false;  // window not fully covered yet
    --first;                       // include one sample at or before t_from

    double max_photon = 0.0, max_drift = 0.0;
    for (std::size_t i = first; i < samples.size(); ++i) {
      max_photon = std::max(max_photon, samples[i].n1 + samples[i].n2);
      if (i > first) {
        const double dt = samples[i].t - samples[i - 1].t;
        const double drift =
            std::max({std::abs(samples[i].o1 - samples[i - 1].o1),
                      std::abs(samples[i].o2 - samples[i - 1].o2),
                      std::abs(samples[i].o3 - samples[i - 1].o3)}) /
            dt;
        max_drift = std::max(max_drift, drift);
      }
    }
    residual_photon = max_photon;
    residual_drift = max_drift;
    return max_photon < tol_photon && max_drift < tol_pop;
  }
};

EvolutionResult run_engine(const SimulationConfig& raw, bool detect) {
  const SimulationConfig cfg = raw.resolved();
  if (detect && cfg.kappa <= 0.0)
    throw ConfigError(
        "steady-state detection requires kappa > 0: without losses the "
        "system keeps oscillating and no steady state exists");

  std::vector<cplx> x;
  const SectorOperator op = make_operator(cfg, x);
  std::vector<std::int64_t> watch_idx;
  for (const WatchElement& w : cfg.watch)
    watch_idx.push_back(op.index_of(w.first, w.second));
  const std::int64_t idx_o1st =
      op.index_of(BasisIndex{1, 0, 0}, BasisIndex{1, 0, 0});
  const std::int64_t idx_o2st =
      op.index_of(BasisIndex{2, 0, 0}, BasisIndex{2, 0, 0});
  std::vector<cplx> k1, k2, k3, k4, tmp(x.size());

  EvolutionResult res;
  res.watch_traces.resize(cfg.watch.size());

  const long nsteps = long(std::ceil(cfg.t_max / cfg.dt - 1e-12));
  const SteadyDetector detector{10.0 / std::max(cfg.kappa, 1e-300),
                                cfg.steady_tol_photon, cfg.steady_tol_pop};

  auto record = [&](long step) {
    const double t = step * cfg.dt;
    const auto pops = op.populations(x);
    TraceSample s;
    s.t = t;
    s.o1 = pops[0];
    s.o2 = pops[1];
    s.o3 = pops[2];
    s.trace = op.trace(x);
    s.n1 = op.mean_photon(x, 1);
    s.n2 = op.mean_photon(x, 2);
    res.trace.samples.push_back(s);
    for (std::size_t w = 0; w < watch_idx.size(); ++w)
      res.watch_traces[w].push_back(
          watch_idx[w] >= 0 ? x[watch_idx[w]] : cplx{0.0, 0.0});
    res.min_population = std::min({res.min_population, s.o1, s.o2, s.o3});
    res.max_population = std::max({res.max_population, s.o1, s.o2, s.o3});
    res.min_trace = std::min(res.min_trace, s.trace);
    res.max_trace = std::max(res.max_trace, s.trace);
    if (std::abs(s.trace - res.trace.samples.front().trace) > cfg.leak_budget) {
      std::ostringstream os;
      os << "trace leakage " << std::abs(s.trace - res.trace.samples.front().trace)
         << " exceeds the budget " << cfg.leak_budget << " at t~ = " << t;
      throw IntegrityError(os.str());
    }
  };

  record(0);
  for (long step = 1; step <= nsteps; ++step) {
    op.apply(x, k1);
    for (std::size_t i = 0; i < x.size(); ++i)
      tmp[i] = x[i] + 0.5 * cfg.dt * k1[i];
    op.apply(tmp, k2);
    for (std::size_t i = 0; i < x.size(); ++i)
      tmp[i] = x[i] + 0.5 * cfg.dt * k2[i];
    op.apply(tmp, k3);
    for (std::size_t i = 0; i < x.size(); ++i)
      tmp[i] = x[i] + cfg.dt * k3[i];
    op.apply(tmp, k4);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += (cfg.dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

    const double defect = op.hermiticity_defect(x);
    res.max_hermiticity_defect = std::max(res.max_hermiticity_defect, defect);
    if (defect > 1e-10) {
      std::ostringstream os;
      os << "hermiticity defect " << defect << " at step " << step;
      throw IntegrityError(os.str());
    }
    op.hermitize(x);

    if (step % cfg.record_every == 0 || step == nsteps) {
      check_finite(x, step);
      record(step);
      if (detect) {
        double rp = 0.0, rd = 0.0;
        if (detector.check(res.trace.samples, rp, rd)) {
          res.steady.converged = true;
          res.steady.t_converged = step * cfg.dt;
          res.steady.residual_photon = rp;
          res.steady.residual_drift = rd;
          break;
        }
      }
    }
  }

  if (detect) {
    res.steady.O1_st = idx_o1st >= 0 ? x[idx_o1st].real() : 0.0;
    res.steady.O2_st = idx_o2st >= 0 ? x[idx_o2st].real() : 0.0;
    res.steady.O3 = res.trace.samples.back().o3;
    if (!res.steady.converged) {
      res.steady.t_converged = res.trace.samples.back().t;
      double rp = 0.0, rd = 0.0;
      detector.check(res.trace.samples, rp, rd);
      res.steady.residual_photon = rp;
      res.steady.residual_drift = rd;
    }
  }
  return res;
}

}  // namespace

EvolutionResult evolve(const SimulationConfig& config) {
  return run_engine(config, /*detect=*/false);
}

EvolutionResult run_steady(const SimulationConfig& config) {
  return run_engine(config, /*detect=*/true);
}

SteadyStateResult detect_steady_state(const SimulationConfig& config) {
  return run_steady(config).steady;
}

}  // namespace lcav
