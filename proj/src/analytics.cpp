#include "lcav/analytics.hpp"

#include <cmath>
#include <sstream>

namespace lcav {

std::pair<double, double> single_photon_steady_states(double kappa) {
  if (kappa <= 0.0)
    throw ConfigError("single_photon_steady_states requires kappa > 0");
  const double k2 = kappa * kappa;
  const double split = 2.0 * k2 / (16.0 + 4.5 * k2) - 0.5 * k2 / (64.0 + 2.0 * k2);
  return {0.5 + split, 0.5 - split};
}

double two_photon_p211(double t, double kappa) {
  const double s3 = std::sqrt(3.0);
  const double a = std::cos(s3 * t) * std::exp(-0.75 * kappa * t) -
                   std::exp(-kappa * t);
  const double b = std::sin(s3 * t) * std::exp(-1.75 * kappa * t) -
                   0.5 * std::sin(2.0 * s3 * t) * std::exp(-1.5 * kappa * t);
  return (2.0 / 9.0) * a * a + kappa / (9.0 * s3) * b;
}

PnValue two_photon_pN_closed_form(double kappa) {
  if (kappa <= 0.0)
    throw ConfigError("two_photon_pN_closed_form requires kappa > 0");
  const double k2 = kappa * kappa;
  PnValue out;
  out.value = (960.0 + 32.0 * k2 - 7.75 * k2 * k2) /
              (27.0 * (1.5 * k2 + 8.0) * (24.5 * k2 + 24.0));
  out.beyond_validity = kappa > 1.5;
  return out;
}

namespace {

/// Double quadrature at fixed step h: the inner integral is accumulated
/// cumulatively (trapezoid), the outer one on the same grid.
double pn_double_integral_fixed(double kappa, double h, double t_end) {
  const long n = long(std::ceil(t_end / h));
  double inner = 0.0;  // Int_0^t e^{kappa t'} p211(t') dt'
  double outer = 0.0;  // Int_0^t e^{-kappa t} inner(t) dt
  double g_prev = two_photon_p211(0.0, kappa);  // e^0 * p211(0)
  double f_prev = 0.0;                          // e^{-0} * inner(0)
  for (long i = 1; i <= n; ++i) {
    const double t = i * h;
    const double g = std::exp(kappa * t) * two_photon_p211(t, kappa);
    inner += 0.5 * h * (g_prev + g);
    const double f = std::exp(-kappa * t) * inner;
    outer += 0.5 * h * (f_prev + f);
    g_prev = g;
    f_prev = f;
  }
  return kappa * kappa * outer;
}

}  // namespace

double pN_from_p211_double_integral(double kappa, double tol) {
  if (kappa <= 0.0)
    throw ConfigError("pN_from_p211_double_integral requires kappa > 0");
  // The outer integrand decays like e^{-kappa t}; cut where it is ~1e-13.
  const double t_end = 30.0 / kappa;
  double h = 0.01;
  double coarse = pn_double_integral_fixed(kappa, h, t_end);
  for (int halving = 0; halving < 6; ++halving) {
    h *= 0.5;
    const double fine = pn_double_integral_fixed(kappa, h, t_end);
    // Trapezoid converges at O(h^2): the Richardson error estimate of the
    // fine result is |fine - coarse| / 3.
    const double err = std::abs(fine - coarse) / 3.0;
    if (err < tol) return fine + (fine - coarse) / 3.0;
    coarse = fine;
  }
  std::ostringstream os;
  os << "pN quadrature did not reach tolerance " << tol << " at kappa "
     << kappa;
  throw ConvergenceError(os.str());
}

namespace {

double trapezoid_real(const std::vector<cplx>& values,
                      const std::vector<TraceSample>& samples) {
  double acc = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double dt = samples[i].t - samples[i - 1].t;
    acc += 0.5 * dt * (values[i - 1].real() + values[i].real());
  }
  return acc;
}

}  // namespace

TwoPhotonSplit extract_pN_pI(const SimulationConfig& config) {
  SimulationConfig cfg = config;
  cfg.field1 = FieldSpec{FieldSpec::Fock{2}, cfg.field1.kmax_override};
  cfg.field2 = FieldSpec{FieldSpec::Fock{0}, cfg.field2.kmax_override};
  cfg.watch = {
      {BasisIndex{2, 1, 0}, BasisIndex{2, 1, 0}},
      {BasisIndex{2, 0, 1}, BasisIndex{2, 0, 1}},
      {BasisIndex{1, 1, 0}, BasisIndex{1, 1, 0}},
  };

  const EvolutionResult run = run_steady(cfg);
  if (!run.steady.converged) {
    std::ostringstream os;
    os << "two-photon evolution did not reach a steady state by t_max at "
       << "kappa " << cfg.kappa;
    throw ConvergenceError(os.str());
  }

  TwoPhotonSplit split;
  split.kappa = cfg.kappa;
  split.p_N = cfg.kappa * trapezoid_real(run.watch_traces[0], run.trace.samples);
  split.p_I = cfg.kappa * trapezoid_real(run.watch_traces[1], run.trace.samples);
  split.O1_integral =
      cfg.kappa * trapezoid_real(run.watch_traces[2], run.trace.samples);
  split.O1_st = run.steady.O1_st;
  split.O2_st = run.steady.O2_st;
  return split;
}

}  // namespace lcav
