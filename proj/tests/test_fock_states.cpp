#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "lcav/fock_states.hpp"
#include "lcav/util.hpp"

using namespace lcav;

TEST_CASE("coherent amplitudes match the explicit formula") {
  const cplx alpha{1.5, 0.5};
  const AmplitudeVector v = coherent_amplitudes(alpha, 25);
  double logfact = 0.0;
  for (int k = 0; k <= 25; ++k) {
    if (k > 0) logfact += std::log(double(k));
    const cplx direct = std::exp(-0.5 * std::norm(alpha)) *
                        std::pow(alpha, k) * std::exp(-0.5 * logfact);
    CHECK(std::abs(v.amps[k] - direct) < 1e-13);
  }
  CHECK(v.norm_deficit() < 1e-6);
  CHECK(mean_photon_number(v) == doctest::Approx(std::norm(alpha)).epsilon(1e-6));
}

TEST_CASE("squeezed vacuum amplitudes: parity, formula, mean photon number") {
  const double r = 1.0, theta = 0.7;
  const AmplitudeVector v = squeezed_vacuum_amplitudes(r, theta, 44);
  for (int k = 1; k <= 43; k += 2) CHECK(v.amps[k] == cplx{0.0, 0.0});

  // c_{2m} = (-1)^m sqrt((2m)!)/(2^m m!) e^{i m theta} tanh^m r / sqrt(cosh r)
  double log_ratio = 0.0;  // log( sqrt((2m)!) / (2^m m!) )
  for (int m = 0; m <= 10; ++m) {
    if (m > 0)
      log_ratio += 0.5 * (std::log(2.0 * m - 1.0) + std::log(2.0 * m)) -
                   std::log(2.0 * m);
    const cplx direct = std::pow(-1.0, m) * std::exp(log_ratio) *
                        std::exp(cplx{0.0, m * theta}) *
                        std::pow(std::tanh(r), m) /
                        std::sqrt(std::cosh(r));
    CHECK(std::abs(v.amps[2 * m] - direct) < 1e-13);
  }
  const double nbar = std::sinh(r) * std::sinh(r);
  // The truncated tail carries weight k, so the mean sits a little low.
  CHECK(mean_photon_number(v) == doctest::Approx(nbar).epsilon(1e-4));
}

TEST_CASE("fock amplitudes and default truncation") {
  const AmplitudeVector v = fock_amplitudes(2, 5);
  for (int k = 0; k <= 5; ++k)
    CHECK(v.amps[k] == (k == 2 ? cplx{1.0, 0.0} : cplx{0.0, 0.0}));
  CHECK(v.norm2() == 1.0);
  CHECK(v.max_support() == 2);

  CHECK(default_truncation(0.0) == 5);
  CHECK(default_truncation(10.0) >= 26);  // 10 + 5 sqrt(11) = 26.58...
  CHECK_THROWS_AS(fock_amplitudes(6, 5), ConfigError);
}

TEST_CASE("truncation error reports the required kmax") {
  // <n> = 10 coherent state cannot fit in kmax = 5 at the default deficit.
  try {
    coherent_amplitudes(cplx{3.16227766, 0.0}, 5);
    FAIL("expected TruncationError");
  } catch (const TruncationError& e) {
    CHECK(e.required_kmax > 5);
    CHECK(e.required_kmax < 100);
  }
}

TEST_CASE("field spec grammar round-trips") {
  for (const char* text :
       {"fock:n=0", "fock:n=2", "coherent:alpha=3.16228",
        "coherent:alpha=1.5+0.5i", "coherent:alpha=1.5-0.5i",
        "squeezed:r=1.8184,theta=0", "squeezed:r=1.2,theta=0.5,kmax=44",
        "fock:n=10,kmax=27"}) {
    const FieldSpec spec = parse_field_spec(text);
    CHECK(format_field_spec(spec) == text);
    CHECK(parse_field_spec(format_field_spec(spec)) == spec);
  }
}

TEST_CASE("field spec mean photon numbers are exact") {
  CHECK(parse_field_spec("fock:n=2").mean_photon() == 2.0);
  CHECK(parse_field_spec("coherent:alpha=3.16227766").mean_photon() ==
        doctest::Approx(10.0).epsilon(1e-8));
  const double r = std::asinh(std::sqrt(10.0));
  const FieldSpec sq = parse_field_spec("squeezed:r=" + fmt_double(r) + ",theta=0");
  CHECK(sq.mean_photon() == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("malformed field specs are rejected") {
  for (const char* text : {"", "fock", "fock:n=", "fock:m=1", "coherent:alpha",
                           "squeezed:theta=1", "gaussian:n=1", "fock:n=1,kmax="})
    CHECK_THROWS_AS(parse_field_spec(text), ConfigError);
}

TEST_CASE("custom field spec loads amplitudes from file") {
  const std::string path = "custom_amps_test.txt";
  {
    std::ofstream out(path);
    out << "0.6 0\n0 0.8\n";
  }
  const FieldSpec spec = parse_field_spec("custom:file=" + path);
  const AmplitudeVector v = spec.amplitudes(3);
  CHECK(v.amps[0] == cplx{0.6, 0.0});
  CHECK(v.amps[1] == cplx{0.0, 0.8});
  CHECK(v.amps[2] == cplx{0.0, 0.0});
  CHECK(v.norm2() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.mean_photon() == doctest::Approx(0.64).epsilon(1e-12));
  std::remove(path.c_str());
}
