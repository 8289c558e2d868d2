#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bsq/grid.hpp"

using namespace bsq;

namespace {
GridSpec small_grid() { return GridSpec(16, 81, 10.0, 0.1, 1.0); }
}

TEST_CASE("dispersion symbol") {
  CHECK(dispersion(0) == 0.0);
  CHECK(dispersion(1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(dispersion(10) >= 100.0);
  CHECK(dispersion(10) <= 100.5);
  for (long long n = -40; n <= 40; ++n) {
    CHECK(dispersion(n) == dispersion(-n));
    const double gap = dispersion(n) - double(n) * double(n);
    CHECK(gap >= 0.0);
    CHECK(gap <= 0.5);
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(GridSpec(15, 81, 10.0, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(16, 1, 10.0, 0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec(16, 11, 10.0, 0.1, 1.0), std::invalid_argument);  // spacing 2 > 1/4
  const GridSpec g = small_grid();
  CHECK(g.tau_spacing() == doctest::Approx(0.25));
  CHECK(g.tau_node(0) == -10.0);
  CHECK(g.tau_node(g.tau_points - 1) == 10.0);
  CHECK(g.mode_index(-g.half_modes()) == 0);
}

TEST_CASE("transform round trip") {
  const GridSpec g = small_grid();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> samples(g.num_modes);
  for (auto& v : samples) v = cplx(unif(rng), unif(rng));
  const SpectralField f = forward_transform(g, samples);
  const std::vector<cplx> back = inverse_transform(f);
  double err = 0.0;
  for (int j = 0; j < g.num_modes; ++j) err = std::max(err, std::abs(back[j] - samples[j]));
  CHECK(err < 1e-12);
  CHECK_THROWS_AS(forward_transform(g, std::span<const cplx>(samples.data(), 5)),
                  std::invalid_argument);
}

TEST_CASE("constant normalization") {
  const GridSpec g = small_grid();
  std::vector<cplx> samples(g.num_modes, cplx(3.5, 0.0));
  const SpectralField f = forward_transform(g, samples);
  CHECK(std::abs(f.coeff(0) - cplx(3.5, 0.0)) < 1e-13);
  for (int n = 1; n <= g.half_modes(); ++n) {
    CHECK(std::abs(f.coeff(n)) < 1e-13);
    CHECK(std::abs(f.coeff(-n)) < 1e-13);
  }
}

TEST_CASE("sobolev norm hand values") {
  const GridSpec g = small_grid();
  SpectralField f(g);
  f.coeff(1) = 1.0;
  f.coeff(-1) = 1.0;
  CHECK(sobolev_norm(f, 1.0) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(sobolev_norm(f, 0.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("sobolev norm monotone in s") {
  const GridSpec g = small_grid();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  SpectralField f(g);
  for (int n = -g.half_modes(); n <= g.half_modes(); ++n)
    f.coeff(n) = cplx(unif(rng), unif(rng));
  double prev = sobolev_norm(f, -1.0);
  for (double s : {-0.5, 0.0, 0.5, 1.0, 2.0}) {
    const double cur = sobolev_norm(f, s);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("hermitian symmetry of real samples") {
  const GridSpec g = small_grid();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<cplx> samples(g.num_modes);
  for (auto& v : samples) v = cplx(unif(rng), 0.0);
  const SpectralField f = forward_transform(g, samples);
  CHECK(f.hermitian_defect() < 1e-13);
  CHECK(f.is_real_valued());
}
