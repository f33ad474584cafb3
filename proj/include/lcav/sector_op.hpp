#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lcav/density_matrix.hpp"

namespace lcav {

/// Precompiled sparse application of the master-equation stencil restricted
/// to the density-matrix elements reachable from the initial state.
///
/// Both the interaction terms and the loss terms preserve the difference
/// d = exc(row) - exc(col) of the excitation numbers and never increase
/// exc(row); an initial state supported on excitations <= n0 and differences
/// within dset therefore evolves exactly inside this element set. Elements
/// are kept in row-major flat-pair order, so results are bit-identical to
/// the dense matrix-free kernel restricted to the same elements.
class SectorOperator {
 public:
  SectorOperator(const Basis& basis, int n0, std::vector<int> dset,
                 double kappa);

  const Basis& basis() const { return basis_; }
  double kappa() const { return kappa_; }
  int max_excitation() const { return n0_; }
  std::size_t size() const { return elements_.size(); }
  std::size_t stencil_entries() const { return cols_.size(); }
  const std::vector<std::pair<BasisIndex, BasisIndex>>& elements() const {
    return elements_;
  }

  /// Sector index of element (r, c), or -1 if outside the compiled set.
  std::int64_t index_of(const BasisIndex& r, const BasisIndex& c) const;

  /// y = L x (the time derivative of every compiled element).
  void apply(const std::vector<cplx>& x, std::vector<cplx>& y) const;

  void hermitize(std::vector<cplx>& x) const;
  double hermiticity_defect(const std::vector<cplx>& x) const;

  double trace(const std::vector<cplx>& x) const;
  std::array<double, 3> populations(const std::vector<cplx>& x,
                                    double eps_herm = 1e-10) const;
  double mean_photon(const std::vector<cplx>& x, int field) const;

  /// Restriction of a full density matrix onto the compiled element set.
  std::vector<cplx> project(const DensityMatrix& dm) const;
  /// Scatter a sector vector back into a full density matrix.
  void scatter(const std::vector<cplx>& x, DensityMatrix& dm) const;

 private:
  Basis basis_;
  int n0_;
  double kappa_;
  std::vector<std::pair<BasisIndex, BasisIndex>> elements_;
  std::unordered_map<std::uint64_t, std::int64_t> lookup_;
  // CSR stencil.
  std::vector<std::int64_t> offsets_;
  std::vector<std::int32_t> cols_;
  std::vector<cplx> coeff_;
  // Conjugate-transpose partner of each element.
  std::vector<std::int64_t> partner_;
  // Diagonal elements (r == c): sector index plus basis labels.
  struct DiagEntry {
    std::int64_t idx;
    int n, k, m;
  };
  std::vector<DiagEntry> diag_;
};

}  // namespace lcav
