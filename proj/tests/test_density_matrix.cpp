#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "lcav/density_matrix.hpp"
#include "lcav/validation.hpp"

using namespace lcav;

TEST_CASE("flat index bijection and excitation number") {
  const Basis basis(2, 3);
  CHECK(basis.dim() == 3u * 3 * 4);
  for (std::size_t i = 0; i < basis.dim(); ++i) {
    const BasisIndex b = basis.unflat(i);
    CHECK(basis.flat(b) == i);
    CHECK(basis.contains(b));
  }
  CHECK(basis.flat(BasisIndex{1, 0, 0}) == 0);
  CHECK(basis.flat(BasisIndex{1, 0, 3}) == 3);
  CHECK(basis.flat(BasisIndex{2, 0, 0}) == 12);
  CHECK(basis.flat(BasisIndex{3, 2, 3}) == basis.dim() - 1);

  CHECK(Basis::excitation(BasisIndex{1, 2, 1}) == 3);
  CHECK(Basis::excitation(BasisIndex{3, 2, 1}) == 4);
  CHECK(Basis::excitation(BasisIndex{2, 0, 0}) == 0);
}

TEST_CASE("initial density matrix is the pure product-state projector") {
  AmplitudeVector psi1 = coherent_amplitudes(cplx{1.0, 0.0}, 4, 1e-1);
  psi1 = psi1.renormalized();
  const AmplitudeVector psi2 = fock_amplitudes(1, 4);
  const DensityMatrix dm = initial_density_matrix(psi1, psi2, 4, 4);

  CHECK(dm.trace() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dm.purity() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dm.hermiticity_defect() < 1e-15);

  // p_{1,k,m;1,k',m'} = c_k c'_m conj(c_{k'} c'_{m'})
  const cplx expect = psi1.amps[2] * std::conj(psi1.amps[0]);
  CHECK(std::abs(dm.at(BasisIndex{1, 2, 1}, BasisIndex{1, 0, 1}) - expect) <
        1e-15);
  // Electronic levels 2 and 3 are unpopulated.
  CHECK(dm.populations()[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dm.populations()[1] == 0.0);
  CHECK(dm.populations()[2] == 0.0);
  CHECK(dm.mean_photon(2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("populations reject a non-real diagonal") {
  DensityMatrix dm(1, 1);
  dm.at(0, 0) = cplx{0.5, 1e-6};
  CHECK_THROWS_AS(dm.populations(), IntegrityError);
  CHECK_NOTHROW(dm.populations(1e-5));
}

TEST_CASE("non-interacting element classification: known cases") {
  auto is_nie = [](BasisIndex r, BasisIndex c) {
    return classify_element(r, c) == ElementClass::NIE;
  };
  // Both indices passive: (1,0,m) or (2,k,0).
  CHECK(is_nie({1, 0, 0}, {1, 0, 0}));
  CHECK(is_nie({1, 0, 3}, {1, 0, 1}));
  CHECK(is_nie({2, 2, 0}, {2, 0, 0}));
  CHECK(is_nie({1, 0, 2}, {2, 3, 0}));
  // Any photon in the coupled slot makes the element interacting.
  CHECK(!is_nie({1, 1, 0}, {1, 1, 0}));
  CHECK(!is_nie({2, 0, 1}, {2, 0, 1}));
  CHECK(!is_nie({3, 0, 0}, {3, 0, 0}));
  CHECK(!is_nie({1, 0, 0}, {3, 0, 0}));
  CHECK(!is_nie({2, 1, 1}, {2, 0, 0}));
}

TEST_CASE("classifier agrees with brute-force stencil evaluation, kmax=3") {
  const int limit = 3;
  const auto brute = classify_all_stencil(limit);
  const Basis basis(limit, limit);
  for (std::size_t r = 0; r < basis.dim(); ++r)
    for (std::size_t c = 0; c < basis.dim(); ++c) {
      const ElementClass expect = brute[r * basis.dim() + c];
      const ElementClass got = classify_element(basis.unflat(r), basis.unflat(c));
      if (got != expect) {
        const BasisIndex ri = basis.unflat(r), ci = basis.unflat(c);
        CAPTURE(ri.n);
        CAPTURE(ri.k);
        CAPTURE(ri.m);
        CAPTURE(ci.n);
        CAPTURE(ci.k);
        CAPTURE(ci.m);
        FAIL_CHECK("classifier disagrees with stencil brute force");
      }
    }
}

TEST_CASE("snapshot save/load round-trips bit-exactly") {
  AmplitudeVector psi1 = coherent_amplitudes(cplx{0.8, -0.3}, 3, 1e-1);
  psi1 = psi1.renormalized();
  const DensityMatrix dm =
      initial_density_matrix(psi1, fock_amplitudes(1, 3), 3, 3);
  const std::string path = "dm_snapshot_test.bin";
  dm.save(path);
  const DensityMatrix back = DensityMatrix::load(path);
  CHECK(back.basis() == dm.basis());
  REQUIRE(back.data().size() == dm.data().size());
  for (std::size_t i = 0; i < dm.data().size(); ++i)
    CHECK(back.data()[i] == dm.data()[i]);
  std::remove(path.c_str());

  CHECK_THROWS_AS(DensityMatrix::load("does_not_exist.bin"), ConfigError);
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("not a snapshot at all", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(DensityMatrix::load(path), ConfigError);
  std::remove(path.c_str());
}
