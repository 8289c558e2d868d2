#include "bsq/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace bsq {

namespace {

double integrand(double x, double p, double q, double alpha, double beta) {
  return std::pow(bracket(x - alpha), -p) * std::pow(bracket(x - beta), -q);
}

double simpson(double fa, double fm, double fb, double h) { return h / 6.0 * (fa + 4.0 * fm + fb); }

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a >= b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return adaptive_simpson(f, a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol, 48);
}

// Integral over [start, start + dir * D] in panels of geometrically doubling
// width; the tail integrand is a smooth power law on each panel.
double integrate_tail(const std::function<double(double)>& f, double start, double D, int dir) {
  double acc = 0.0;
  double offset = 0.0, width = 1.0;
  while (offset < D) {
    const double next = std::min(offset + width, D);
    const double a = dir > 0 ? start + offset : start - next;
    const double b = dir > 0 ? start + next : start - offset;
    acc += integrate(f, a, b, 5e-13);
    offset = next;
    width *= 2.0;
  }
  return acc;
}

}  // namespace

double calculus_bound(double p, double q, double alpha, double beta) {
  if (p <= 0.0 || q <= 0.0) throw std::domain_error("calculus_bound: need p, q > 0");
  if (p + q <= 1.0) throw std::domain_error("calculus_bound: need p + q > 1");
  const double r = std::min({p, q, p + q - 1.0});
  const double lo_c = std::min(alpha, beta);
  const double hi_c = std::max(alpha, beta);

  // Beyond distance D from both centers the majorant <x - center>^{-(p+q)}
  // integrates to <= tail_tol in closed form.
  const double tail_tol = 1e-9;
  const double D = std::pow(tail_tol * (p + q - 1.0), 1.0 / (1.0 - p - q));

  const auto f = [&](double x) { return integrand(x, p, q, alpha, beta); };
  // The kinks of |x - alpha|, |x - beta| sit at the ends of the central piece.
  double I = integrate(f, lo_c, hi_c, 1e-11);
  I += integrate_tail(f, lo_c, D, -1);
  I += integrate_tail(f, hi_c, D, +1);
  return std::pow(bracket(alpha - beta), r) * I;
}

double quadratic_sum(double gamma_exp, long long n, double tau, int sign, int n1_bound) {
  if (!(gamma_exp > 0.5)) throw std::domain_error("quadratic_sum: need gamma > 1/2");
  const double sgn = sign >= 0 ? 1.0 : -1.0;
  double sum = 0.0;
  for (long long n1 = -n1_bound; n1 <= n1_bound; ++n1) {
    const double phase = tau + sgn * static_cast<double>(n1) * static_cast<double>(n - n1);
    sum += std::pow(1.0 + std::abs(phase), -gamma_exp);
  }
  return sum;
}

std::pair<double, double> progression_sum(double a_exp, double alpha, double beta, double nu) {
  if (!(a_exp > 0.0 && a_exp < 0.5))
    throw std::domain_error("progression_sum: need 0 < a < 1/2");
  if (!(beta > 0.0 && nu > 0.0)) throw std::domain_error("progression_sum: need beta, nu > 0");

  double lhs = 0.0;
  // {alpha + n} and {alpha - n} over integer n are the same set, so H is the
  // single unit progression through alpha clipped to [-beta, beta].
  for (long long k = static_cast<long long>(std::ceil(-beta - alpha - 1e-12));
       k <= static_cast<long long>(std::floor(beta - alpha + 1e-12)); ++k) {
    const double h = alpha + static_cast<double>(k);
    if (std::abs(h) > beta + 1e-12) continue;
    lhs += std::pow(nu + std::abs(h), -2.0 * a_exp);
  }
  const double e = 1.0 - 2.0 * a_exp;
  const double integral = (std::pow(nu + beta, e) - std::pow(nu, e)) / e;
  const double rhs = 2.0 * (2.0 * std::pow(nu, -2.0 * a_exp) + integral);
  return {lhs, rhs};
}

double weight_equivalence(double x, double y) {
  if (x < 0.0 || y < 0.0) throw std::domain_error("weight_equivalence: need x, y >= 0");
  return bracket(x - y) / bracket(x - std::sqrt(y * y + y));
}

std::pair<double, double> exponent_functions(double s) {
  return {std::max(0.0, -2.0 * s), std::max(0.0, -4.0 * s)};
}

LemmaReport verify_calculus_bound() {
  LemmaReport rep;
  rep.lemma_id = "calculus_bound";
  const std::vector<std::pair<double, double>> pqs{{0.6, 0.6}, {1.2, 0.8}, {1.0, 1.0}};
  double sup = 0.0, sup_refined = 0.0;
  for (auto [p, q] : pqs) {
    for (double d = 0.0; d <= 1000.0; d = d == 0.0 ? 1.0 : 2.0 * d) {
      const double v = calculus_bound(p, q, 0.0, d);
      sup = std::max(sup, v);
      // refinement: shift both centers (translation invariance) and re-evaluate
      sup_refined = std::max(sup_refined, calculus_bound(p, q, 7.5, 7.5 + d));
      ++rep.cases_tested;
    }
  }
  rep.empirical_value = sup;
  rep.refined_value = sup_refined;
  rep.stability = std::abs(sup - sup_refined) / sup;
  rep.pass = rep.stability < 0.05 && std::isfinite(sup);
  rep.note = "sup over (p,q) grid and |alpha-beta| <= 1e3 of <a-b>^r I(a,b)";
  return rep;
}

LemmaReport verify_quadratic_sum(std::uint64_t seed) {
  LemmaReport rep;
  rep.lemma_id = "quadratic_sum";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long long> nd(-64, 64);
  std::uniform_real_distribution<double> taud(-4096.0, 4096.0);
  std::uniform_int_distribution<int> signd(0, 1);
  double sup = 0.0, sup_refined = 0.0;
  const int bound = 4096;
  for (int i = 0; i < 100; ++i) {
    const long long n = nd(rng);
    const double tau = taud(rng);
    const int sign = signd(rng) ? 1 : -1;
    for (double g : {0.6, 1.0}) {
      sup = std::max(sup, quadratic_sum(g, n, tau, sign, bound));
      sup_refined = std::max(sup_refined, quadratic_sum(g, n, tau, sign, 2 * bound));
      ++rep.cases_tested;
    }
  }
  rep.empirical_value = sup;
  rep.refined_value = sup_refined;
  rep.stability = std::abs(sup_refined - sup) / sup;
  rep.pass = rep.stability < 0.05 && std::isfinite(sup);
  rep.note = "sup over 100 sampled (n,tau,sign), gamma in {0.6, 1.0}; refinement doubles n1 range";
  return rep;
}

LemmaReport verify_weight_equivalence(std::uint64_t seed, long long trials) {
  LemmaReport rep;
  rep.lemma_id = "weight_equivalence";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(0.0, 1e6);
  double worst_hi = 1.0, worst_lo = 1.0;
  for (long long i = 0; i < trials; ++i) {
    const double r = weight_equivalence(d(rng), d(rng));
    worst_hi = std::max(worst_hi, r);
    worst_lo = std::min(worst_lo, r);
    if (r < 2.0 / 3.0 - 1e-12 || r > 1.5 + 1e-12) ++rep.violations;
    ++rep.cases_tested;
  }
  rep.empirical_value = worst_hi;
  rep.refined_value = worst_lo;
  rep.stability = 0.0;
  rep.pass = rep.violations == 0;
  rep.note = "ratio range over random (x,y) in [0,1e6]^2; bounds [2/3, 3/2]";
  return rep;
}

LemmaReport verify_progression_sum(std::uint64_t seed, long long trials) {
  LemmaReport rep;
  rep.lemma_id = "progression_sum";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> alphad(-50.0, 50.0);
  std::uniform_real_distribution<double> betad(0.01, 100.0);
  std::uniform_real_distribution<double> nud(0.01, 10.0);
  std::uniform_real_distribution<double> ad(0.01, 0.49);
  double worst_margin = 1e300;
  for (long long i = 0; i < trials; ++i) {
    const auto [lhs, rhs] = progression_sum(ad(rng), alphad(rng), betad(rng), nud(rng));
    worst_margin = std::min(worst_margin, rhs - lhs);
    if (lhs > rhs + 1e-9) ++rep.violations;
    ++rep.cases_tested;
  }
  rep.empirical_value = worst_margin;
  rep.refined_value = worst_margin;
  rep.pass = rep.violations == 0;
  rep.note = "min(rhs - lhs) over random (a, alpha, beta, nu); must stay >= 0";
  return rep;
}

}  // namespace bsq
