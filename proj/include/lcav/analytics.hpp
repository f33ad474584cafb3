#pragma once

#include <utility>

#include "lcav/integrator.hpp"

namespace lcav {

/// Fitted closed-form steady-state populations for a single-photon first
/// field and a vacuum second field. O1 + O2 = 1 identically.
std::pair<double, double> single_photon_steady_states(double kappa);

/// Fitted closed form for the element p_{2,1,1;2,1,1}(t~) in the two-photon
/// case (exact for kappa = 0).
double two_photon_p211(double t, double kappa);

struct PnValue {
  double value = 0.0;
  /// The closed form starts to diverge from the simulation beyond
  /// kappa = 1.5.
  bool beyond_validity = false;
};

/// Closed form for the NIE-sourced contribution p_N to O2_st in the
/// two-photon case.
PnValue two_photon_pN_closed_form(double kappa);

/// p_N via the double quadrature
///   kappa^2 Int_0^inf dt e^{-kappa t} Int_0^t dt' e^{kappa t'} p211(t');
/// checked by Richardson extrapolation against the requested tolerance.
/// Reproduces the closed form; guards the transcription of both formulas.
double pN_from_p211_double_integral(double kappa, double tol = 1e-6);

/// NIE/IE split of the two-photon steady state O2_st.
struct TwoPhotonSplit {
  double p_N = 0.0;  // from kappa * Int p_{2,1,0;2,1,0}
  double p_I = 0.0;  // from kappa * Int p_{2,0,1;2,0,1}
  double kappa = 0.0;
  double O1_st = 0.0;
  double O2_st = 0.0;
  /// kappa * Int p_{1,1,0;1,1,0}, the quadrature route to O1_st.
  double O1_integral = 0.0;
};

/// Run the two-photon scenario (fock:n=2 + vacuum) at config.kappa, record
/// the source-element traces and extract p_N and p_I by quadrature.
/// Throws ConvergenceError if no steady state is reached by t_max.
TwoPhotonSplit extract_pN_pI(const SimulationConfig& config);

}  // namespace lcav
