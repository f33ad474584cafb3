#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lcav/fock_states.hpp"

namespace lcav {

/// One ket of the product basis |n, k, m>: electronic level n in {1,2,3},
/// field-1 Fock number k, field-2 Fock number m.
struct BasisIndex {
  int n = 1;
  int k = 0;
  int m = 0;

  friend bool operator==(const BasisIndex& a, const BasisIndex& b) {
    return a.n == b.n && a.k == b.k && a.m == b.m;
  }
};

/// Flat-index bijection over |n,k,m>: ((n-1)(kmax+1) + k)(mmax+1) + m.
class Basis {
 public:
  Basis(int kmax, int mmax);

  int kmax() const { return kmax_; }
  int mmax() const { return mmax_; }
  std::size_t dim() const { return dim_; }

  std::size_t flat(const BasisIndex& b) const {
    return (std::size_t(b.n - 1) * (kmax_ + 1) + b.k) * (mmax_ + 1) + b.m;
  }
  BasisIndex unflat(std::size_t i) const {
    const int m = int(i % (mmax_ + 1));
    const std::size_t rest = i / (mmax_ + 1);
    const int k = int(rest % (kmax_ + 1));
    return BasisIndex{int(rest / (kmax_ + 1)) + 1, k, m};
  }
  bool contains(const BasisIndex& b) const {
    return b.n >= 1 && b.n <= 3 && b.k >= 0 && b.k <= kmax_ && b.m >= 0 &&
           b.m <= mmax_;
  }
  /// Total excitation number k + m + [n == 3]; conserved by the
  /// interaction Hamiltonian and lowered by one per photon loss.
  static int excitation(const BasisIndex& b) {
    return b.k + b.m + (b.n == 3 ? 1 : 0);
  }

  friend bool operator==(const Basis& a, const Basis& b) {
    return a.kmax_ == b.kmax_ && a.mmax_ == b.mmax_;
  }

 private:
  int kmax_;
  int mmax_;
  std::size_t dim_;
};

/// Dense row-major density matrix over the product basis.
class DensityMatrix {
 public:
  DensityMatrix(int kmax, int mmax);

  const Basis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.dim(); }

  cplx& at(std::size_t row, std::size_t col) { return data_[row * dim() + col]; }
  const cplx& at(std::size_t row, std::size_t col) const {
    return data_[row * dim() + col];
  }
  cplx& at(const BasisIndex& r, const BasisIndex& c) {
    return at(basis_.flat(r), basis_.flat(c));
  }
  const cplx& at(const BasisIndex& r, const BasisIndex& c) const {
    return at(basis_.flat(r), basis_.flat(c));
  }

  std::vector<cplx>& data() { return data_; }
  const std::vector<cplx>& data() const { return data_; }

  double trace() const;
  /// Sum |p_{r,c}|^2; equals Tr(rho^2) for Hermitian rho.
  double purity() const;
  double hermiticity_defect() const;
  /// Replace rho by (rho + rho^dagger)/2.
  void hermitize();

  /// Populations (O1, O2, O3); throws IntegrityError if a diagonal
  /// imaginary part exceeds eps_herm.
  std::array<double, 3> populations(double eps_herm = 1e-10) const;
  /// Mean photon number of field 1 (field = 1) or field 2 (field = 2).
  double mean_photon(int field) const;

  void save(const std::string& path) const;
  static DensityMatrix load(const std::string& path);

 private:
  Basis basis_;
  std::vector<cplx> data_;
};

/// rho(0) = |psi1 psi2><psi1 psi2| on electronic level 1:
/// p_{1,k,m;1,k',m'} = c_k c'_m conj(c_{k'}) conj(c'_{m'}).
DensityMatrix initial_density_matrix(const AmplitudeVector& psi1,
                                     const AmplitudeVector& psi2, int kmax,
                                     int mmax);

enum class ElementClass { IE, NIE };

/// Non-interacting elements have identically vanishing time derivative at
/// kappa = 0: both indices must be of the form (1,0,m) or (2,k,0).
ElementClass classify_element(const BasisIndex& row, const BasisIndex& col);

}  // namespace lcav
