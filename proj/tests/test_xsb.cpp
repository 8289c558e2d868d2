#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "bsq/random_fields.hpp"
#include "bsq/xsb.hpp"

using namespace bsq;

namespace {
GridSpec xsb_grid() { return GridSpec(16, 241, 30.0, 0.05, 1.0); }
}

TEST_CASE("admissibility classification") {
  CHECK(XsbParams{0.0, 0.6, 0.3}.classify() == XsbParams::Admissibility::case_i);
  CHECK(XsbParams{0.5, 0.8, 0.45}.classify() == XsbParams::Admissibility::case_i);
  CHECK(XsbParams{-0.2, 0.6, 0.45}.classify() == XsbParams::Admissibility::case_ii);
  CHECK(XsbParams{-0.5, 0.6, 0.45}.classify() == XsbParams::Admissibility::inadmissible);
  CHECK(XsbParams{-0.2, 0.6, 0.3}.classify() == XsbParams::Admissibility::inadmissible);
  CHECK(XsbParams{0.0, 0.4, 0.3}.classify() == XsbParams::Admissibility::inadmissible);
  CHECK_FALSE(XsbParams{0.0, 0.6, 0.6}.admissible());
}

TEST_CASE("modulation weights") {
  CHECK(modulation_weight(0.0, 0, WeightKind::boussinesq) == 1.0);
  CHECK(modulation_weight(2.0, 1, WeightKind::schrodinger) == 2.0);
  CHECK(modulation_weight(-2.0, 1, WeightKind::schrodinger) == 2.0);
  CHECK(modulation_weight(2.0, 1, WeightKind::boussinesq)
        == doctest::Approx(1.0 + (2.0 - std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("norm of a single lattice point") {
  const GridSpec g = xsb_grid();
  SpaceTimeField F(g);
  const int j0 = (g.tau_points - 1) / 2;  // tau = 0
  F.set(0, j0, 1.0);
  for (double s : {-0.5, 0.0, 1.0})
    for (double b : {-0.3, 0.0, 0.6})
      CHECK(xsb_norm(F, s, b) == doctest::Approx(std::sqrt(F.tau_weight(j0))).epsilon(1e-14));
}

TEST_CASE("norm monotone in both exponents") {
  const GridSpec g = xsb_grid();
  std::mt19937_64 rng(13);
  const SpaceTimeField F = random_spacetime_field(g, 6, 1.0, 1.0, rng);
  double prev = xsb_norm(F, -1.0, 0.2);
  for (double s : {-0.5, 0.0, 0.5}) {
    const double cur = xsb_norm(F, s, 0.2);
    CHECK(cur >= prev);
    prev = cur;
  }
  prev = xsb_norm(F, 0.3, -0.4);
  for (double b : {-0.2, 0.0, 0.4, 0.8}) {
    const double cur = xsb_norm(F, 0.3, b);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("scaling of the norm") {
  const GridSpec g = xsb_grid();
  std::mt19937_64 rng(17);
  SpaceTimeField F = random_spacetime_field(g, 4, 1.0, 1.0, rng);
  const double before = xsb_norm(F, 0.2, 0.4);
  F *= cplx(0.0, 3.0);
  CHECK(xsb_norm(F, 0.2, 0.4) == doctest::Approx(3.0 * before).epsilon(1e-12));
}

TEST_CASE("weight equivalence of the two norms") {
  const GridSpec g = xsb_grid();
  SUBCASE("mean mode only gives ratio one") {
    SpaceTimeField F(g);
    for (int j = 0; j < g.tau_points; ++j) F.set(0, j, cplx(1.0, -1.0));
    CHECK(norm_equivalence_ratio(F, 0.3, 0.6) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("random fields stay inside the bracket bounds") {
    std::mt19937_64 rng(19);
    const double lo = std::pow(2.0 / 3.0, 0.6), hi = std::pow(1.5, 0.6);
    for (int trial = 0; trial < 20; ++trial) {
      const SpaceTimeField F = random_spacetime_field(g, 8, 1.0, 1.0, rng);
      const double r = norm_equivalence_ratio(F, 0.0, 0.6);
      CHECK(r >= lo);
      CHECK(r <= hi);
    }
  }
  SUBCASE("zero field is rejected") {
    CHECK_THROWS_AS(norm_equivalence_ratio(SpaceTimeField(g), 0.0, 0.6), UndefinedRatioError);
  }
}

TEST_CASE("windowed transform") {
  const GridSpec g = xsb_grid();
  SUBCASE("zero trajectory maps to the zero field") {
    Trajectory z{g, -2.0, 0.05, std::vector<SpectralField>(81, SpectralField(g))};
    const SpaceTimeField F = transform_windowed(z, [](double) { return 1.0; });
    CHECK(F.squared_mass() == 0.0);
  }
  SUBCASE("pure tone peaks at its frequency") {
    const double tau0 = 3.1;
    Trajectory traj{g, -2.0, 0.05, {}};
    for (int k = 0; k <= 80; ++k) {
      SpectralField st(g);
      st.coeff(1) = std::polar(1.0, tau0 * traj.time(k));
      traj.states.push_back(st);
    }
    const SpaceTimeField F = transform_windowed(traj, [](double) { return 1.0; });
    int best = 0;
    for (int j = 1; j < g.tau_points; ++j)
      if (std::abs(F.at(1, j)) > std::abs(F.at(1, best))) best = j;
    CHECK(std::abs(g.tau_node(best) - tau0) <= g.tau_spacing());
  }
  SUBCASE("coarse tau grid is rejected") {
    const GridSpec wide(16, 241, 30.0, 0.05, 1.0);
    Trajectory traj{wide, -8.0, 0.05, std::vector<SpectralField>(321, SpectralField(wide))};
    traj.states[0].coeff(1) = 1.0;  // span 16 needs spacing <= pi/16 < 0.25
    CHECK_THROWS_AS(transform_windowed(traj, [](double) { return 1.0; }), ResolutionError);
  }
}

TEST_CASE("discrete Parseval identity for the cutoff window") {
  const GridSpec g(8, 481, 60.0, 0.05, 1.0);
  std::mt19937_64 rng(23);
  const SpectralField phi = random_real_data(g, 2, 1.0, 1.5, rng);
  const SpectralField psi = random_real_data(g, 2, 0.5, 1.5, rng);
  Trajectory traj = linear_trajectory(phi, psi, -2.0, 0.05, 80);
  const TimeCutoff theta{1.0};
  const SpaceTimeField F = time_space_transform(traj, theta);
  const double lhs = F.squared_mass() / (2.0 * std::numbers::pi);
  const double rhs = windowed_time_mass(traj, [&](double t) { return theta(t); });
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
  CHECK(F.tau_tail_fraction() < 1e-8);
}

TEST_CASE("linear estimate probe") {
  const GridSpec g = xsb_grid();
  std::mt19937_64 rng(29);
  const SpectralField phi = random_real_data(g, 4, 1.0, 1.5, rng);
  const SpectralField psi = random_real_data(g, 4, 1.0, 1.5, rng);
  SUBCASE("needs b above one half") {
    CHECK_THROWS_AS(linear_estimate_probe(phi, psi, 0.0, 0.5), std::domain_error);
  }
  SUBCASE("zero data is rejected") {
    CHECK_THROWS_AS(linear_estimate_probe(SpectralField(g), SpectralField(g), 0.0, 0.6),
                    UndefinedRatioError);
  }
  SUBCASE("finite positive ratio on random data") {
    const double r = linear_estimate_probe(phi, psi, 0.0, 0.6);
    CHECK(r > 0.0);
    CHECK(std::isfinite(r));
  }
}

TEST_CASE("normalized Duhamel ratio") {
  const GridSpec g(8, 1281, 160.0, 1.0 / 64.0, 1.0);
  Trajectory source{g, -2.0, g.t_step, {}};
  const int K = static_cast<int>(std::lround(4.0 / g.t_step)) + 1;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int k = 0; k < K; ++k) {
    SpectralField st(g);
    for (int n = 1; n <= 3; ++n) {
      const cplx v(unif(rng), unif(rng));
      st.coeff(n) = v;
      st.coeff(-n) = std::conj(v);
    }
    source.states.push_back(st);
  }
  SUBCASE("parameter domain") {
    CHECK_THROWS_AS(duhamel_estimate_probe(source, 0.0, 0.6, 0.2, 0.5), std::domain_error);
    CHECK_THROWS_AS(duhamel_estimate_probe(source, 0.0, 0.6, -0.6, 0.5), std::domain_error);
    CHECK_THROWS_AS(duhamel_estimate_probe(source, 0.0, 0.6, -0.3, 1.5), std::domain_error);
  }
  SUBCASE("zero source gives zero") {
    Trajectory z = source;
    for (auto& st : z.states) st = SpectralField(g);
    CHECK(duhamel_estimate_probe(z, 0.0, 0.6, -0.3, 0.5) == 0.0);
  }
  SUBCASE("nonzero mean mode is rejected") {
    Trajectory bad = source;
    bad.states[3].coeff(0) = 1.0;
    CHECK_THROWS_AS(duhamel_estimate_probe(bad, 0.0, 0.6, -0.3, 0.5), std::domain_error);
  }
  SUBCASE("no blow-up as the window shrinks") {
    std::vector<double> log_T, log_r;
    for (double T : {1.0, 0.5, 0.25, 0.125}) {
      const double r = duhamel_estimate_probe(source, 0.0, 0.6, -0.3, T);
      CHECK(r > 0.0);
      log_T.push_back(std::log(T));
      log_r.push_back(std::log(r));
    }
    CHECK(fit_slope(log_T, log_r) >= -0.05);
  }
}
