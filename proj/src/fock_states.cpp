#include "lcav/fock_states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lcav/util.hpp"

namespace lcav {

double AmplitudeVector::norm2() const {
  double s = 0.0;
  for (const cplx& c : amps) s += std::norm(c);
  return s;
}

int AmplitudeVector::max_support() const {
  for (int k = kmax(); k >= 0; --k) {
    if (amps[k] != cplx{0.0, 0.0}) return k;
  }
  return 0;
}

AmplitudeVector AmplitudeVector::renormalized() const {
  const double n = std::sqrt(norm2());
  AmplitudeVector out = *this;
  if (n > 0.0) {
    for (cplx& c : out.amps) c /= n;
  }
  return out;
}

double mean_photon_number(const AmplitudeVector& v) {
  double s = 0.0;
  for (int k = 0; k <= v.kmax(); ++k) s += k * std::norm(v.amps[k]);
  return s;
}

namespace {

constexpr int kSearchCap = 100000;

[[noreturn]] void throw_truncation(const char* what, int kmax, double deficit,
                                   int required) {
  std::ostringstream os;
  os << what << ": kmax=" << kmax << " leaves norm deficit " << deficit
     << " > eps_trunc; kmax >= " << required << " required";
  throw TruncationError(os.str(), required);
}

}  // namespace

AmplitudeVector coherent_amplitudes(cplx alpha, int kmax, double eps_trunc) {
  if (kmax < 0) throw ConfigError("coherent_amplitudes: kmax must be >= 0");
  AmplitudeVector v;
  v.amps.resize(kmax + 1);
  cplx c = std::exp(cplx{-0.5 * std::norm(alpha), 0.0});
  double norm = 0.0;
  for (int k = 0; k <= kmax; ++k) {
    v.amps[k] = c;
    norm += std::norm(c);
    c *= alpha / std::sqrt(double(k + 1));
  }
  if (1.0 - norm > eps_trunc) {
    // Extend the recurrence until the deficit falls below tolerance to
    // report the truncation the caller actually needs.
    int k = kmax + 1;
    while (1.0 - norm > eps_trunc && k < kSearchCap) {
      norm += std::norm(c);
      c *= alpha / std::sqrt(double(k + 1));
      ++k;
    }
    throw_truncation("coherent_amplitudes", kmax, 1.0 - v.norm2(), k - 1);
  }
  return v;
}

AmplitudeVector squeezed_vacuum_amplitudes(double r, double theta, int kmax,
                                           double eps_trunc) {
  if (r < 0.0) throw ConfigError("squeezed_vacuum_amplitudes: r must be >= 0");
  if (kmax < 0) throw ConfigError("squeezed_vacuum_amplitudes: kmax must be >= 0");
  AmplitudeVector v;
  v.amps.assign(kmax + 1, cplx{0.0, 0.0});
  const cplx ratio_base = -std::polar(std::tanh(r), theta);
  // c_{2(m+1)} = c_{2m} * (-e^{i theta} tanh r) * sqrt((2m+1)(2m+2)) / (2(m+1))
  cplx c{1.0 / std::sqrt(std::cosh(r)), 0.0};
  double norm = 0.0;
  int two_m = 0;
  for (; two_m <= kmax; two_m += 2) {
    v.amps[two_m] = c;
    norm += std::norm(c);
    const double m = two_m / 2;
    c *= ratio_base * std::sqrt((2 * m + 1) * (2 * m + 2)) / (2 * (m + 1));
  }
  if (1.0 - norm > eps_trunc) {
    double ext = norm;
    while (1.0 - ext > eps_trunc && two_m < kSearchCap) {
      ext += std::norm(c);
      const double m = two_m / 2;
      c *= ratio_base * std::sqrt((2 * m + 1) * (2 * m + 2)) / (2 * (m + 1));
      two_m += 2;
    }
    throw_truncation("squeezed_vacuum_amplitudes", kmax, 1.0 - norm, two_m - 2);
  }
  return v;
}

AmplitudeVector fock_amplitudes(int n, int kmax) {
  if (n < 0) throw ConfigError("fock_amplitudes: n must be >= 0");
  if (n > kmax)
    throw ConfigError("fock_amplitudes: n=" + std::to_string(n) +
                      " exceeds kmax=" + std::to_string(kmax));
  AmplitudeVector v;
  v.amps.assign(kmax + 1, cplx{0.0, 0.0});
  v.amps[n] = cplx{1.0, 0.0};
  return v;
}

int default_truncation(double mean_photon) {
  return static_cast<int>(
      std::ceil(mean_photon + 5.0 * std::sqrt(mean_photon + 1.0)));
}

double FieldSpec::mean_photon() const {
  struct Visitor {
    double operator()(const FieldSpec::Coherent& c) const {
      return std::norm(c.alpha);
    }
    double operator()(const FieldSpec::SqueezedVacuum& s) const {
      const double sh = std::sinh(s.r);
      return sh * sh;
    }
    double operator()(const FieldSpec::Fock& f) const { return f.n; }
    double operator()(const FieldSpec::Custom& c) const {
      AmplitudeVector v{c.amps};
      return mean_photon_number(v);
    }
  };
  return std::visit(Visitor{}, kind);
}

std::string FieldSpec::label() const {
  return format_field_spec(*this);
}

AmplitudeVector FieldSpec::amplitudes(int kmax, double eps_trunc) const {
  struct Visitor {
    int kmax;
    double eps;
    AmplitudeVector operator()(const FieldSpec::Coherent& c) const {
      return coherent_amplitudes(c.alpha, kmax, eps);
    }
    AmplitudeVector operator()(const FieldSpec::SqueezedVacuum& s) const {
      return squeezed_vacuum_amplitudes(s.r, s.theta, kmax, eps);
    }
    AmplitudeVector operator()(const FieldSpec::Fock& f) const {
      return fock_amplitudes(f.n, kmax);
    }
    AmplitudeVector operator()(const FieldSpec::Custom& c) const {
      AmplitudeVector v{c.amps};
      v.amps.resize(kmax + 1, cplx{0.0, 0.0});
      if (static_cast<int>(c.amps.size()) - 1 > kmax) {
        for (int k = kmax + 1; k < static_cast<int>(c.amps.size()); ++k) {
          if (c.amps[k] != cplx{0.0, 0.0})
            throw ConfigError("custom field state has support beyond kmax");
        }
      }
      const double deficit = v.norm_deficit();
      if (deficit > eps || deficit < -eps)
        throw ConfigError("custom field state is not normalized (deficit " +
                          fmt_double(deficit) + ")");
      return v;
    }
  };
  return std::visit(Visitor{kmax, eps_trunc}, kind);
}

namespace {

double parse_double(std::string_view s, const std::string& ctx) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("malformed number '" + std::string(s) + "' in " + ctx);
  return out;
}

int parse_int(std::string_view s, const std::string& ctx) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ConfigError("malformed integer '" + std::string(s) + "' in " + ctx);
  return out;
}

/// Accepts "<re>", "<re>+<im>i", "<re>-<im>i".
cplx parse_complex(std::string_view s, const std::string& ctx) {
  if (!s.empty() && s.back() == 'i') {
    std::string_view body = s.substr(0, s.size() - 1);
    // Split at the last +/- that is not a leading sign or exponent sign.
    for (size_t i = body.size(); i-- > 1;) {
      const char c = body[i];
      if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
        const double re = parse_double(body.substr(0, i), ctx);
        const double sign = c == '+' ? 1.0 : -1.0;
        // from_chars rejects a leading '+', so split the sign off here.
        const double im = i + 1 == body.size()
                              ? 1.0
                              : parse_double(body.substr(i + 1), ctx);
        return {re, sign * im};
      }
    }
    throw ConfigError("malformed complex '" + std::string(s) + "' in " + ctx);
  }
  return {parse_double(s, ctx), 0.0};
}

std::vector<std::pair<std::string, std::string>> parse_kv_list(
    std::string_view s, const std::string& ctx) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    std::string_view item = s.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ConfigError("expected key=value in '" + std::string(item) +
                        "' of " + ctx);
    out.emplace_back(std::string(item.substr(0, eq)),
                     std::string(item.substr(eq + 1)));
    pos = comma + 1;
    if (comma == s.size()) break;
  }
  return out;
}

std::vector<cplx> read_amplitude_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open amplitude file: " + path);
  std::vector<cplx> amps;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    if (!(ls >> re)) throw ConfigError("malformed amplitude line in " + path);
    ls >> im;
    amps.emplace_back(re, im);
  }
  if (amps.empty()) throw ConfigError("empty amplitude file: " + path);
  return amps;
}

}  // namespace

FieldSpec parse_field_spec(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw ConfigError("field spec '" + text +
                      "' missing ':' (expected e.g. fock:n=1)");
  const std::string kind = text.substr(0, colon);
  const auto kvs = parse_kv_list(std::string_view(text).substr(colon + 1), text);

  FieldSpec spec;
  auto take_override = [&spec, &text](const std::pair<std::string, std::string>& kv) {
    if (kv.first == "kmax") {
      spec.kmax_override = parse_int(kv.second, text);
      return true;
    }
    return false;
  };

  if (kind == "coherent") {
    FieldSpec::Coherent c;
    bool have_alpha = false;
    for (const auto& kv : kvs) {
      if (take_override(kv)) continue;
      if (kv.first == "alpha") {
        c.alpha = parse_complex(kv.second, text);
        have_alpha = true;
      } else {
        throw ConfigError("unknown key '" + kv.first + "' in " + text);
      }
    }
    if (!have_alpha) throw ConfigError("coherent spec requires alpha=: " + text);
    spec.kind = c;
  } else if (kind == "squeezed") {
    FieldSpec::SqueezedVacuum s;
    bool have_r = false;
    for (const auto& kv : kvs) {
      if (take_override(kv)) continue;
      if (kv.first == "r") {
        s.r = parse_double(kv.second, text);
        have_r = true;
      } else if (kv.first == "theta") {
        s.theta = parse_double(kv.second, text);
      } else {
        throw ConfigError("unknown key '" + kv.first + "' in " + text);
      }
    }
    if (!have_r) throw ConfigError("squeezed spec requires r=: " + text);
    if (s.r < 0.0) throw ConfigError("squeezed spec requires r >= 0: " + text);
    spec.kind = s;
  } else if (kind == "fock") {
    FieldSpec::Fock f;
    bool have_n = false;
    for (const auto& kv : kvs) {
      if (take_override(kv)) continue;
      if (kv.first == "n") {
        f.n = parse_int(kv.second, text);
        have_n = true;
      } else {
        throw ConfigError("unknown key '" + kv.first + "' in " + text);
      }
    }
    if (!have_n) throw ConfigError("fock spec requires n=: " + text);
    if (f.n < 0) throw ConfigError("fock spec requires n >= 0: " + text);
    spec.kind = f;
  } else if (kind == "custom") {
    FieldSpec::Custom c;
    for (const auto& kv : kvs) {
      if (take_override(kv)) continue;
      if (kv.first == "file") {
        c.source_path = kv.second;
        c.amps = read_amplitude_file(kv.second);
      } else {
        throw ConfigError("unknown key '" + kv.first + "' in " + text);
      }
    }
    if (c.amps.empty()) throw ConfigError("custom spec requires file=: " + text);
    spec.kind = c;
  } else {
    throw ConfigError("unknown field kind '" + kind +
                      "' (expected coherent|squeezed|fock|custom)");
  }
  return spec;
}

std::string format_field_spec(const FieldSpec& spec) {
  std::string out;
  struct Visitor {
    std::string operator()(const FieldSpec::Coherent& c) const {
      std::string s = "coherent:alpha=" + fmt_double(c.alpha.real());
      if (c.alpha.imag() != 0.0) {
        s += (c.alpha.imag() >= 0.0 ? "+" : "") + fmt_double(c.alpha.imag()) + "i";
      }
      return s;
    }
    std::string operator()(const FieldSpec::SqueezedVacuum& s) const {
      return "squeezed:r=" + fmt_double(s.r) + ",theta=" + fmt_double(s.theta);
    }
    std::string operator()(const FieldSpec::Fock& f) const {
      return "fock:n=" + std::to_string(f.n);
    }
    std::string operator()(const FieldSpec::Custom& c) const {
      return "custom:file=" + c.source_path;
    }
  };
  out = std::visit(Visitor{}, spec.kind);
  if (spec.kmax_override) out += ",kmax=" + std::to_string(*spec.kmax_override);
  return out;
}

bool operator==(const FieldSpec& a, const FieldSpec& b) {
  return format_field_spec(a) == format_field_spec(b);
}

}  // namespace lcav
