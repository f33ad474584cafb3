#include "lcav/sector_op.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lcav {

namespace {

std::uint64_t pair_key(std::size_t rf, std::size_t cf, std::size_t dim) {
  return std::uint64_t(rf) * dim + cf;
}

}  // namespace

SectorOperator::SectorOperator(const Basis& basis, int n0,
                               std::vector<int> dset, double kappa)
    : basis_(basis), n0_(n0), kappa_(kappa) {
  if (kappa < 0.0) throw ConfigError("SectorOperator: kappa must be >= 0");
  if (n0 < 0) throw ConfigError("SectorOperator: n0 must be >= 0");

  // Close dset under negation and deduplicate; |d|ise needed so that every
  // element's conjugate-transpose partner is also compiled.
  std::vector<int> ds = std::move(dset);
  ds.push_back(0);
  const std::size_t base = ds.size();
  for (std::size_t i = 0; i < base; ++i) ds.push_back(-ds[i]);
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
  auto in_dset = [&ds](int d) {
    return std::binary_search(ds.begin(), ds.end(), d);
  };

  const std::size_t dim = basis_.dim();
  // Basis kets with excitation <= n0, in flat order.
  std::vector<std::size_t> kets;
  std::vector<int> ket_exc;
  for (std::size_t i = 0; i < dim; ++i) {
    const int e = Basis::excitation(basis_.unflat(i));
    if (e <= n0) {
      kets.push_back(i);
      ket_exc.push_back(e);
    }
  }

  for (std::size_t a = 0; a < kets.size(); ++a) {
    for (std::size_t b = 0; b < kets.size(); ++b) {
      if (!in_dset(ket_exc[a] - ket_exc[b])) continue;
      lookup_.emplace(pair_key(kets[a], kets[b], dim),
                      std::int64_t(elements_.size()));
      elements_.emplace_back(basis_.unflat(kets[a]), basis_.unflat(kets[b]));
    }
  }

  const int kmax = basis_.kmax();
  const int mmax = basis_.mmax();
  std::vector<double> sq(std::max(kmax, mmax) + 2);
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::sqrt(double(i));

  offsets_.reserve(elements_.size() + 1);
  offsets_.push_back(0);
  partner_.resize(elements_.size());
  constexpr cplx I{0.0, 1.0};

  auto push = [&](const BasisIndex& r, const BasisIndex& c, cplx coefficient) {
    if (!basis_.contains(r) || !basis_.contains(c)) return;
    auto it = lookup_.find(pair_key(basis_.flat(r), basis_.flat(c), dim));
    if (it == lookup_.end()) return;  // identically zero outside the sector
    cols_.push_back(std::int32_t(it->second));
    coeff_.push_back(coefficient);
  };

  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& [r, c] = elements_[i];
    const int n = r.n, k = r.k, m = r.m;
    const int np = c.n, kp = c.k, mp = c.m;

    // Same term order as apply_liouvillian in liouvillian.cpp.
    if (n + 2 <= 3 && k - 1 >= 0)
      push({n + 2, k - 1, m}, c, I * sq[k]);
    if (n - 2 >= 1)
      push({n - 2, k + 1, m}, c, I * sq[k + 1]);
    if (np + 2 <= 3 && kp - 1 >= 0)
      push(r, {np + 2, kp - 1, mp}, -I * sq[kp]);
    if (np - 2 >= 1)
      push(r, {np - 2, kp + 1, mp}, -I * sq[kp + 1]);

    if (n + 1 <= 3 && n + 1 != 2 && m - 1 >= 0)
      push({n + 1, k, m - 1}, c, I * sq[m]);
    if (n - 1 >= 1 && n - 1 != 1)
      push({n - 1, k, m + 1}, c, I * sq[m + 1]);
    if (np + 1 <= 3 && np + 1 != 2 && mp - 1 >= 0)
      push(r, {np + 1, kp, mp - 1}, -I * sq[mp]);
    if (np - 1 >= 1 && np - 1 != 1)
      push(r, {np - 1, kp, mp + 1}, -I * sq[mp + 1]);

    if (kappa_ != 0.0) {
      push({n, k + 1, m}, {np, kp + 1, mp}, kappa_ * sq[k + 1] * sq[kp + 1]);
      push({n, k, m + 1}, {np, kp, mp + 1}, kappa_ * sq[m + 1] * sq[mp + 1]);
      if (k + kp + m + mp > 0)
        push(r, c, -kappa_ * 0.5 * double(k + kp + m + mp));
    }

    offsets_.push_back(std::int64_t(cols_.size()));

    auto pit = lookup_.find(pair_key(basis_.flat(c), basis_.flat(r), dim));
    partner_[i] = pit == lookup_.end() ? -1 : pit->second;
    if (r == c) diag_.push_back(DiagEntry{std::int64_t(i), n, k, m});
  }
}

std::int64_t SectorOperator::index_of(const BasisIndex& r,
                                      const BasisIndex& c) const {
  if (!basis_.contains(r) || !basis_.contains(c)) return -1;
  auto it = lookup_.find(pair_key(basis_.flat(r), basis_.flat(c), basis_.dim()));
  return it == lookup_.end() ? -1 : it->second;
}

void SectorOperator::apply(const std::vector<cplx>& x,
                           std::vector<cplx>& y) const {
  const std::size_t n = elements_.size();
  y.resize(n);
  const std::int64_t* off = offsets_.data();
  const std::int32_t* cols = cols_.data();
  const cplx* coef = coeff_.data();
  const cplx* xv = x.data();
  for (std::size_t i = 0; i < n; ++i) {
    double acc_re = 0.0, acc_im = 0.0;
    for (std::int64_t j = off[i]; j < off[i + 1]; ++j) {
      const cplx cc = coef[j];
      const cplx vv = xv[cols[j]];
      acc_re += cc.real() * vv.real() - cc.imag() * vv.imag();
      acc_im += cc.real() * vv.imag() + cc.imag() * vv.real();
    }
    y[i] = cplx{acc_re, acc_im};
  }
}

void SectorOperator::hermitize(std::vector<cplx>& x) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const std::int64_t p = partner_[i];
    if (p < 0) continue;
    if (std::int64_t(i) == p) {
      x[i] = cplx{x[i].real(), 0.0};
    } else if (std::int64_t(i) < p) {
      const cplx avg = 0.5 * (x[i] + std::conj(x[p]));
      x[i] = avg;
      x[p] = std::conj(avg);
    }
  }
}

double SectorOperator::hermiticity_defect(const std::vector<cplx>& x) const {
  double worst = 0.0;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const std::int64_t p = partner_[i];
    if (p < std::int64_t(i)) continue;
    const cplx d = x[i] - std::conj(x[p]);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

double SectorOperator::trace(const std::vector<cplx>& x) const {
  double t = 0.0;
  for (const DiagEntry& d : diag_) t += x[d.idx].real();
  return t;
}

std::array<double, 3> SectorOperator::populations(const std::vector<cplx>& x,
                                                  double eps_herm) const {
  std::array<double, 3> o{0.0, 0.0, 0.0};
  for (const DiagEntry& d : diag_) {
    const cplx v = x[d.idx];
    if (std::abs(v.imag()) > eps_herm) {
      std::ostringstream os;
      os << "populations: diagonal imaginary part " << v.imag()
         << " exceeds eps_herm=" << eps_herm;
      throw IntegrityError(os.str());
    }
    o[d.n - 1] += v.real();
  }
  return o;
}

double SectorOperator::mean_photon(const std::vector<cplx>& x,
                                   int field) const {
  double s = 0.0;
  for (const DiagEntry& d : diag_)
    s += double(field == 1 ? d.k : d.m) * x[d.idx].real();
  return s;
}

std::vector<cplx> SectorOperator::project(const DensityMatrix& dm) const {
  if (!(dm.basis() == basis_)) throw ConfigError("project: basis mismatch");
  std::vector<cplx> x(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i)
    x[i] = dm.at(elements_[i].first, elements_[i].second);
  return x;
}

void SectorOperator::scatter(const std::vector<cplx>& x,
                             DensityMatrix& dm) const {
  if (!(dm.basis() == basis_)) throw ConfigError("scatter: basis mismatch");
  for (std::size_t i = 0; i < elements_.size(); ++i)
    dm.at(elements_[i].first, elements_[i].second) = x[i];
}

}  // namespace lcav
