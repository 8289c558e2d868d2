#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bsq/propagators.hpp"
#include "bsq/random_fields.hpp"

using namespace bsq;

namespace {

GridSpec small_grid() { return GridSpec(16, 81, 10.0, 0.1, 1.0); }

SpectralField cos_x(const GridSpec& g, double amp = 1.0) {
  SpectralField f(g);
  f.coeff(1) = 0.5 * amp;
  f.coeff(-1) = 0.5 * amp;
  return f;
}

SpectralField sin_x(const GridSpec& g) {
  SpectralField f(g);
  f.coeff(1) = cplx(0.0, -0.5);
  f.coeff(-1) = cplx(0.0, 0.5);
  return f;
}

double field_distance(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (int n = -a.half_modes(); n <= a.half_modes(); ++n)
    d = std::max(d, std::abs(a.coeff(n) - b.coeff(n)));
  return d;
}

}  // namespace

TEST_CASE("cosine propagator") {
  const GridSpec g = small_grid();
  const SpectralField phi = cos_x(g);
  SUBCASE("t = 0 is the identity") {
    CHECK(field_distance(apply_vc(phi, 0.0), phi) == 0.0);
  }
  SUBCASE("closed-form multiplier at t = 1/2") {
    const SpectralField out = apply_vc(phi, 0.5);
    const double expect = std::cos(0.5 * std::sqrt(2.0)) / 2.0;
    CHECK(std::abs(out.coeff(1) - cplx(expect, 0.0)) < 1e-14);
    CHECK(std::abs(out.coeff(-1) - cplx(expect, 0.0)) < 1e-14);
  }
}

TEST_CASE("sine-derivative propagator") {
  const GridSpec g = small_grid();
  SUBCASE("kills the mean mode") {
    SpectralField psi(g);
    psi.coeff(0) = 2.0;
    const SpectralField out = apply_vs_dx(psi, 0.7);
    CHECK(std::abs(out.coeff(0)) == 0.0);
  }
  SUBCASE("closed-form magnitude on sin x") {
    const SpectralField out = apply_vs_dx(sin_x(g), 0.5);
    const double expect = std::abs(std::sin(0.5 * std::sqrt(2.0))) / (2.0 * std::sqrt(2.0));
    CHECK(std::abs(out.coeff(1)) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::abs(out.coeff(-1)) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("free evolution of cosine data") {
  const GridSpec g = small_grid();
  const SpectralField phi = cos_x(g);
  const SpectralField psi(g);
  SUBCASE("zero data stays zero") {
    const SpectralField u = linear_solution(SpectralField(g), psi, 0.8);
    for (int n = -g.half_modes(); n <= g.half_modes(); ++n) CHECK(std::abs(u.coeff(n)) == 0.0);
  }
  SUBCASE("t = 0 returns the data") {
    CHECK(field_distance(linear_solution(phi, psi, 0.0), phi) == 0.0);
  }
  SUBCASE("u(t,x) = cos(sqrt(2) t) cos(x)") {
    for (double t : {0.1, 0.5, 1.3}) {
      const SpectralField u = linear_solution(phi, psi, t);
      SpectralField expect = cos_x(g, std::cos(std::sqrt(2.0) * t));
      CHECK(field_distance(u, expect) < 1e-10);
    }
  }
}

TEST_CASE("flow group property and reality") {
  const GridSpec g = small_grid();
  std::mt19937_64 rng(5);
  ModePairState st{random_real_data(g, 6, 1.0, 1.5, rng), random_real_data(g, 6, 1.0, 1.5, rng)};
  const ModePairState one = linear_flow(linear_flow(st, 0.3), 0.45);
  const ModePairState two = linear_flow(st, 0.75);
  CHECK(field_distance(one.u, two.u) < 1e-12);
  CHECK(field_distance(one.ut, two.ut) < 1e-12);
  CHECK(one.u.is_real_valued());
  CHECK(one.ut.is_real_valued());
}

TEST_CASE("equation residual of the free solution") {
  const GridSpec g = small_grid();
  SUBCASE("zero solution has zero residual") {
    const LinearSolution sol{SpectralField(g), SpectralField(g)};
    CHECK(linear_residual(sol, 0.4, 1e-3) == 0.0);
  }
  SUBCASE("second-order decay in the difference step") {
    const LinearSolution sol{cos_x(g), SpectralField(g)};
    double prev = linear_residual(sol, 0.5, 1e-2);
    for (int k = 0; k < 2; ++k) {
      const double cur = linear_residual(sol, 0.5, 1e-2 / std::pow(2.0, k + 1));
      const double order = std::log2(prev / cur);
      CHECK(order == doctest::Approx(2.0).epsilon(0.05));
      prev = cur;
    }
  }
  SUBCASE("tiny residual for band-limited random data") {
    std::mt19937_64 rng(9);
    const LinearSolution sol{random_real_data(g, 2, 1.0, 2.0, rng),
                             random_real_data(g, 2, 1.0, 2.0, rng)};
    CHECK(linear_residual(sol, 0.3, 1e-4) < 1e-6);
  }
}
