#pragma once

#include "lcav/density_matrix.hpp"

namespace lcav {

/// Matrix-free application of the master-equation right-hand side:
/// out = d rho / d t~ for loss rate kappa (dimensionless). Out-of-range
/// stencil reads contribute zero (absorbing truncation).
void apply_liouvillian(const DensityMatrix& dm, double kappa,
                       DensityMatrix& out);

DensityMatrix apply_liouvillian(const DensityMatrix& dm, double kappa);

/// Selector for the specialized non-interacting-element derivatives.
struct NieSelector {
  enum class Level { One, Two } level;
  int fock;  // m for Level::One (element p_{1,0,m;1,0,m}), k for Level::Two

  static NieSelector level1(int m) { return {Level::One, m}; }
  static NieSelector level2(int k) { return {Level::Two, k}; }
};

/// d/dt~ of p_{1,0,m;1,0,m} or p_{2,k,0;2,k,0}: the loss-fed chain
/// kappa * [IE source + NIE source - Fock number * self]. Equals the
/// corresponding entry of apply_liouvillian exactly.
double nie_rhs(const DensityMatrix& dm, double kappa, const NieSelector& which);

}  // namespace lcav
