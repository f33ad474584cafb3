#include "lcav/density_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace lcav {

Basis::Basis(int kmax, int mmax) : kmax_(kmax), mmax_(mmax) {
  if (kmax < 0 || mmax < 0)
    throw ConfigError("Basis: truncation bounds must be >= 0");
  dim_ = std::size_t(3) * (kmax + 1) * (mmax + 1);
}

DensityMatrix::DensityMatrix(int kmax, int mmax)
    : basis_(kmax, mmax), data_(basis_.dim() * basis_.dim(), cplx{0.0, 0.0}) {}

double DensityMatrix::trace() const {
  double t = 0.0;
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) t += at(i, i).real();
  return t;
}

double DensityMatrix::purity() const {
  double p = 0.0;
  for (const cplx& c : data_) p += std::norm(c);
  return p;
}

double DensityMatrix::hermiticity_defect() const {
  double worst = 0.0;
  const std::size_t d = dim();
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = r; c < d; ++c) {
      worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    }
  }
  return worst;
}

void DensityMatrix::hermitize() {
  const std::size_t d = dim();
  for (std::size_t r = 0; r < d; ++r) {
    at(r, r) = cplx{at(r, r).real(), 0.0};
    for (std::size_t c = r + 1; c < d; ++c) {
      const cplx avg = 0.5 * (at(r, c) + std::conj(at(c, r)));
      at(r, c) = avg;
      at(c, r) = std::conj(avg);
    }
  }
}

std::array<double, 3> DensityMatrix::populations(double eps_herm) const {
  std::array<double, 3> o{0.0, 0.0, 0.0};
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) {
    const cplx v = at(i, i);
    if (std::abs(v.imag()) > eps_herm) {
      std::ostringstream os;
      os << "populations: diagonal imaginary part " << v.imag()
         << " exceeds eps_herm=" << eps_herm;
      throw IntegrityError(os.str());
    }
    o[basis_.unflat(i).n - 1] += v.real();
  }
  return o;
}

double DensityMatrix::mean_photon(int field) const {
  double s = 0.0;
  const std::size_t d = dim();
  for (std::size_t i = 0; i < d; ++i) {
    const BasisIndex b = basis_.unflat(i);
    s += (field == 1 ? b.k : b.m) * at(i, i).real();
  }
  return s;
}

namespace {
constexpr char kSnapshotMagic[4] = {'L', 'C', 'D', 'M'};
constexpr std::uint32_t kSnapshotVersion = 1;
}  // namespace

void DensityMatrix::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out.write(kSnapshotMagic, 4);
  const std::uint32_t header[3] = {kSnapshotVersion,
                                   std::uint32_t(basis_.kmax()),
                                   std::uint32_t(basis_.mmax())};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  // complex<double> is laid out as {re, im}; written little-endian on all
  // supported targets.
  out.write(reinterpret_cast<const char*>(data_.data()),
            std::streamsize(data_.size() * sizeof(cplx)));
  if (!out) throw ConfigError("write failed: " + path);
}

DensityMatrix DensityMatrix::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open: " + path);
  char magic[4];
  std::uint32_t header[3];
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!in || std::memcmp(magic, kSnapshotMagic, 4) != 0)
    throw ConfigError("not a density-matrix snapshot: " + path);
  if (header[0] != kSnapshotVersion)
    throw ConfigError("unsupported snapshot version in " + path);
  DensityMatrix dm{int(header[1]), int(header[2])};
  in.read(reinterpret_cast<char*>(dm.data_.data()),
          std::streamsize(dm.data_.size() * sizeof(cplx)));
  if (!in) throw ConfigError("truncated snapshot: " + path);
  return dm;
}

DensityMatrix initial_density_matrix(const AmplitudeVector& psi1,
                                     const AmplitudeVector& psi2, int kmax,
                                     int mmax) {
  if (psi1.kmax() > kmax || psi2.kmax() > mmax)
    throw ConfigError("initial_density_matrix: field state exceeds truncation");
  DensityMatrix dm(kmax, mmax);
  const int K = psi1.kmax();
  const int M = psi2.kmax();
  for (int k = 0; k <= K; ++k) {
    for (int m = 0; m <= M; ++m) {
      const cplx left = psi1.amps[k] * psi2.amps[m];
      if (left == cplx{0.0, 0.0}) continue;
      for (int kp = 0; kp <= K; ++kp) {
        for (int mp = 0; mp <= M; ++mp) {
          const cplx right = std::conj(psi1.amps[kp] * psi2.amps[mp]);
          dm.at(BasisIndex{1, k, m}, BasisIndex{1, kp, mp}) = left * right;
        }
      }
    }
  }
  return dm;
}

ElementClass classify_element(const BasisIndex& row, const BasisIndex& col) {
  auto passive = [](const BasisIndex& b) {
    return (b.n == 1 && b.k == 0) || (b.n == 2 && b.m == 0);
  };
  return (passive(row) && passive(col)) ? ElementClass::NIE : ElementClass::IE;
}

}  // namespace lcav
