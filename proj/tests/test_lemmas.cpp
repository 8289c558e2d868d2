#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "bsq/lemmas.hpp"

using namespace bsq;

TEST_CASE("two-weight integral bound") {
  SUBCASE("coincident centers at p = q = 1 give exactly 2") {
    CHECK(calculus_bound(1.0, 1.0, 0.3, 0.3) == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("translation invariance") {
    const double base = calculus_bound(1.2, 0.8, 0.0, 3.0);
    for (double h : {1.0, -5.5, 40.0}) {
      CHECK(calculus_bound(1.2, 0.8, h, 3.0 + h) == doctest::Approx(base).epsilon(1e-7));
    }
  }
  SUBCASE("symmetric in (p, alpha) <-> (q, beta)") {
    CHECK(calculus_bound(1.2, 0.8, 0.0, 7.0)
          == doctest::Approx(calculus_bound(0.8, 1.2, 7.0, 0.0)).epsilon(1e-7));
  }
  SUBCASE("normalized value stays bounded as the centers separate") {
    // the value creeps up toward a finite limit; successive doubling factors
    // must shrink toward 1 and the whole sweep stays under the limit's size
    double prev = calculus_bound(1.2, 0.8, 0.0, 1.0);
    double prev_factor = 10.0;
    for (double d = 2.0; d <= 1024.0; d *= 2.0) {
      const double cur = calculus_bound(1.2, 0.8, 0.0, d);
      const double factor = cur / prev;
      CHECK(factor <= prev_factor + 1e-12);
      CHECK(cur <= 10.5);  // limit is int <x>^{-1.2} dx = 10
      prev = cur;
      prev_factor = factor;
    }
    CHECK(prev_factor < 1.03);
  }
  SUBCASE("hypothesis violations are rejected") {
    CHECK_THROWS_AS(calculus_bound(0.5, 0.5, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(calculus_bound(-1.0, 3.0, 0.0, 1.0), std::domain_error);
  }
}

TEST_CASE("quadratic-phase mode sum") {
  SUBCASE("classical series value at the origin") {
    // sum over n1 of 1/(1 + n1^2) = pi coth(pi)
    const double expect = std::numbers::pi / std::tanh(std::numbers::pi);
    CHECK(quadratic_sum(1.0, 0, 0.0, 1, 200000) == doctest::Approx(expect).epsilon(1e-3));
  }
  SUBCASE("exponent at or below one half is rejected") {
    CHECK_THROWS_AS(quadratic_sum(0.5, 0, 0.0, 1, 100), std::domain_error);
    CHECK_THROWS_AS(quadratic_sum(0.4, 3, 2.0, -1, 100), std::domain_error);
  }
  SUBCASE("sampled sup is stable under truncation doubling") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<long long> modes(-64, 64);
    std::uniform_real_distribution<double> taus(-4096.0, 4096.0);
    double sup1 = 0.0, sup2 = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
      const long long n = modes(rng);
      const double tau = taus(rng);
      const int sign = trial % 2 ? 1 : -1;
      const double v1 = quadratic_sum(0.6, n, tau, sign, 4096);
      const double v2 = quadratic_sum(0.6, n, tau, sign, 8192);
      CHECK(v2 >= v1);
      sup1 = std::max(sup1, v1);
      sup2 = std::max(sup2, v2);
    }
    CHECK((sup2 - sup1) / sup2 < 0.05);
  }
}

TEST_CASE("arithmetic progression bound") {
  SUBCASE("hand case") {
    const auto [lhs, rhs] = progression_sum(0.3, 0.0, 0.5, 1.0);
    CHECK(lhs <= rhs);
    CHECK(lhs == doctest::Approx(1.0).epsilon(1e-12));  // H = {0}
  }
  SUBCASE("hypotheses") {
    CHECK_THROWS_AS(progression_sum(0.6, 0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(progression_sum(0.3, 0.0, -1.0, 1.0), std::domain_error);
  }
  SUBCASE("no violations over random parameters") {
    const LemmaReport r = verify_progression_sum(7, 10000);
    CHECK(r.cases_tested == 10000);
    CHECK(r.violations == 0);
    CHECK(r.pass);
  }
}

TEST_CASE("pointwise weight comparison") {
  CHECK(weight_equivalence(5.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  SUBCASE("on the diagonal at large argument") {
    for (double y : {10.0, 1e3, 1e6}) {
      const double r = weight_equivalence(y, y);
      CHECK(r >= 2.0 / 3.0);
      CHECK(r <= 1.0);
    }
  }
  SUBCASE("random sweep stays in [2/3, 3/2]") {
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> unif(0.0, 1e6);
    for (int trial = 0; trial < 100000; ++trial) {
      const double r = weight_equivalence(unif(rng), unif(rng));
      CHECK(r >= 2.0 / 3.0);
      CHECK(r <= 1.5);
    }
  }
}

TEST_CASE("loss exponents") {
  CHECK(exponent_functions(-0.25) == std::pair{0.5, 1.0});
  CHECK(exponent_functions(1.0) == std::pair{0.0, 0.0});
  CHECK(exponent_functions(-0.5) == std::pair{1.0, 2.0});
  for (double s : {-0.4, -0.1, 0.0, 0.3}) {
    const auto [lambda, eta] = exponent_functions(s);
    CHECK(eta == doctest::Approx(2.0 * lambda).epsilon(1e-15));
  }
}

TEST_CASE("bundled verifier reports") {
  for (const LemmaReport& r : {verify_calculus_bound(), verify_quadratic_sum(1),
                               verify_weight_equivalence(1), verify_progression_sum(1)}) {
    INFO(r.lemma_id, ": ", r.note);
    CHECK(r.pass);
    CHECK(r.violations == 0);
    CHECK(r.cases_tested > 0);
  }
}
