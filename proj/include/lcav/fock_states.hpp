#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lcav/errors.hpp"

namespace lcav {

using cplx = std::complex<double>;

/// Default bound on the acceptable norm deficit 1 - sum |c_k|^2 of a
/// truncated field state.
inline constexpr double kDefaultTruncationTol = 1e-6;

/// Truncated Fock-space expansion of one field mode. amps[k] is the
/// amplitude on |k>, k = 0..kmax.
struct AmplitudeVector {
  std::vector<cplx> amps;

  int kmax() const { return static_cast<int>(amps.size()) - 1; }
  double norm2() const;
  double norm_deficit() const { return 1.0 - norm2(); }
  /// Largest k with a nonzero amplitude (0 for the zero/vacuum vector).
  int max_support() const;
  AmplitudeVector renormalized() const;
};

/// Sum_k k |c_k|^2.
double mean_photon_number(const AmplitudeVector& v);

/// Coherent state |alpha>, c_k = exp(-|alpha|^2/2) alpha^k / sqrt(k!),
/// built by the recurrence c_{k+1} = c_k * alpha / sqrt(k+1).
AmplitudeVector coherent_amplitudes(cplx alpha, int kmax,
                                    double eps_trunc = kDefaultTruncationTol);

/// Squeezed vacuum with xi = r e^{i theta}; support on even Fock numbers only:
///   c_{2m} = (-1)^m sqrt((2m)!)/(2^m m!) e^{i m theta} tanh^m(r) / sqrt(cosh r)
AmplitudeVector squeezed_vacuum_amplitudes(double r, double theta, int kmax,
                                           double eps_trunc = kDefaultTruncationTol);

/// Fock state |n>: c_k = delta_{n,k}. Requires n <= kmax.
AmplitudeVector fock_amplitudes(int n, int kmax);

/// Default truncation bound for a state of given mean photon number:
/// ceil(<n> + 5 sqrt(<n> + 1)).
int default_truncation(double mean_photon);

/// Declarative description of an initial field state, parsed from the
/// CLI/config grammar:
///   coherent:alpha=<re>[+<im>i]
///   squeezed:r=<real>,theta=<real>
///   fock:n=<int>
///   custom:file=<path>          (one "re im" pair per line)
/// An optional per-field truncation override may be appended as ",kmax=<int>".
struct FieldSpec {
  struct Coherent {
    cplx alpha;
  };
  struct SqueezedVacuum {
    double r = 0.0;
    double theta = 0.0;
  };
  struct Fock {
    int n = 0;
  };
  struct Custom {
    std::vector<cplx> amps;
    std::string source_path;
  };

  std::variant<Coherent, SqueezedVacuum, Fock, Custom> kind = Fock{0};
  std::optional<int> kmax_override;

  /// Exact mean photon number of the untruncated state.
  double mean_photon() const;
  /// Short human/CSV label, e.g. "fock:n=2".
  std::string label() const;
  /// Materialize amplitudes at the given truncation.
  AmplitudeVector amplitudes(int kmax,
                             double eps_trunc = kDefaultTruncationTol) const;
};

FieldSpec parse_field_spec(const std::string& text);
/// Inverse of parse_field_spec (canonical form; round-trips).
std::string format_field_spec(const FieldSpec& spec);

bool operator==(const FieldSpec& a, const FieldSpec& b);

}  // namespace lcav
