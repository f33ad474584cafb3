#include "lcav/liouvillian.hpp"

#include <cmath>
#include <vector>

namespace lcav {

void apply_liouvillian(const DensityMatrix& dm, double kappa,
                       DensityMatrix& out) {
  if (!(dm.basis() == out.basis()))
    throw ConfigError("apply_liouvillian: basis mismatch");
  const Basis& basis = dm.basis();
  const int kmax = basis.kmax();
  const int mmax = basis.mmax();

  std::vector<double> sq(std::max(kmax, mmax) + 2);
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::sqrt(double(i));

  auto val = [&](int n, int k, int m, int np, int kp, int mp) -> cplx {
    return dm.at(basis.flat(BasisIndex{n, k, m}),
                 basis.flat(BasisIndex{np, kp, mp}));
  };
  constexpr cplx I{0.0, 1.0};

  const std::size_t d = basis.dim();
  for (std::size_t rf = 0; rf < d; ++rf) {
    const BasisIndex r = basis.unflat(rf);
    const int n = r.n, k = r.k, m = r.m;
    for (std::size_t cf = 0; cf < d; ++cf) {
      const BasisIndex c = basis.unflat(cf);
      const int np = c.n, kp = c.k, mp = c.m;
      cplx acc{0.0, 0.0};

      // Field 1 (1 <-> 3 transition), row index.
      if (n + 2 <= 3 && k - 1 >= 0) acc += I * sq[k] * val(n + 2, k - 1, m, np, kp, mp);
      if (n - 2 >= 1 && k + 1 <= kmax)
        acc += I * sq[k + 1] * val(n - 2, k + 1, m, np, kp, mp);
      // Field 1, column index.
      if (np + 2 <= 3 && kp - 1 >= 0)
        acc -= I * sq[kp] * val(n, k, m, np + 2, kp - 1, mp);
      if (np - 2 >= 1 && kp + 1 <= kmax)
        acc -= I * sq[kp + 1] * val(n, k, m, np - 2, kp + 1, mp);

      // Field 2 (2 <-> 3 transition), row index; the Kronecker-delta gates
      // suppress the dipole-forbidden 1 <-> 2 coupling.
      if (n + 1 <= 3 && n + 1 != 2 && m - 1 >= 0)
        acc += I * sq[m] * val(n + 1, k, m - 1, np, kp, mp);
      if (n - 1 >= 1 && n - 1 != 1 && m + 1 <= mmax)
        acc += I * sq[m + 1] * val(n - 1, k, m + 1, np, kp, mp);
      // Field 2, column index.
      if (np + 1 <= 3 && np + 1 != 2 && mp - 1 >= 0)
        acc -= I * sq[mp] * val(n, k, m, np + 1, kp, mp - 1);
      if (np - 1 >= 1 && np - 1 != 1 && mp + 1 <= mmax)
        acc -= I * sq[mp + 1] * val(n, k, m, np - 1, kp, mp + 1);

      // Photon loss at rate kappa, identical for both modes.
      if (kappa != 0.0) {
        if (k + 1 <= kmax && kp + 1 <= kmax)
          acc += kappa * sq[k + 1] * sq[kp + 1] * val(n, k + 1, m, np, kp + 1, mp);
        if (m + 1 <= mmax && mp + 1 <= mmax)
          acc += kappa * sq[m + 1] * sq[mp + 1] * val(n, k, m + 1, np, kp, mp + 1);
        acc -= kappa * 0.5 * double(k + kp + m + mp) * dm.at(rf, cf);
      }

      out.at(rf, cf) = acc;
    }
  }
}

DensityMatrix apply_liouvillian(const DensityMatrix& dm, double kappa) {
  DensityMatrix out(dm.basis().kmax(), dm.basis().mmax());
  apply_liouvillian(dm, kappa, out);
  return out;
}

double nie_rhs(const DensityMatrix& dm, double kappa, const NieSelector& which) {
  const Basis& basis = dm.basis();
  const int kmax = basis.kmax();
  const int mmax = basis.mmax();
  auto diag = [&](const BasisIndex& b) -> double {
    return basis.contains(b) ? dm.at(b, b).real() : 0.0;
  };
  if (which.level == NieSelector::Level::One) {
    const int m = which.fock;
    if (m < 0 || m > mmax) throw ConfigError("nie_rhs: m out of range");
    return kappa * (diag(BasisIndex{1, 1, m}) +
                    diag(BasisIndex{1, 0, m + 1}) * (m + 1) -
                    diag(BasisIndex{1, 0, m}) * m);
  }
  const int k = which.fock;
  if (k < 0 || k > kmax) throw ConfigError("nie_rhs: k out of range");
  return kappa * (diag(BasisIndex{2, k, 1}) +
                  diag(BasisIndex{2, k + 1, 0}) * (k + 1) -
                  diag(BasisIndex{2, k, 0}) * k);
}

}  // namespace lcav
