#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bsq/util.hpp"

namespace bsq {

// Numerical checks of the calculus lemmas feeding the bilinear analysis.

// <alpha-beta>^r * integral dx / (<x-alpha>^p <x-beta>^q) with
// r = min{p, q, p+q-1}; adaptive quadrature with analytic power-law tail
// majorants keeping the truncation below ~1e-8. Requires p, q > 0, p+q > 1.
double calculus_bound(double p, double q, double alpha, double beta);

// Truncated sum over |n1| <= n1_bound of (1 + |tau +- n1(n - n1)|)^{-gamma}.
// Requires gamma > 1/2.
double quadratic_sum(double gamma_exp, long long n, double tau, int sign, int n1_bound);

// Both sides of the arithmetic-progression bound: the set
// H = {alpha + n : n integer, |alpha + n| <= beta} summed against
// (nu + |h|)^{-2a}, versus 2 (2/nu^{2a} + int_0^beta (nu+x)^{-2a} dx).
// Requires 0 < a < 1/2 and beta, nu > 0.
std::pair<double, double> progression_sum(double a_exp, double alpha, double beta, double nu);

// (1 + |x - y|) / (1 + |x - sqrt(y^2 + y)|); always in [2/3, 3/2] for x, y >= 0.
double weight_equivalence(double x, double y);

// Loss exponents (lambda, eta) = (max(0, -2s), max(0, -4s)); eta = 2 lambda.
std::pair<double, double> exponent_functions(double s);

struct LemmaReport {
  std::string lemma_id;
  double empirical_value = 0.0;   // sup / worst case over the sweep
  double refined_value = 0.0;     // same quantity after one refinement step
  double stability = 0.0;         // relative change under refinement
  long long cases_tested = 0;
  long long violations = 0;
  bool pass = false;
  std::string note;
};

// Full verifier runs shared by the CLI and the acceptance suite.
LemmaReport verify_calculus_bound();
LemmaReport verify_quadratic_sum(std::uint64_t seed);
LemmaReport verify_weight_equivalence(std::uint64_t seed, long long trials = 100000);
LemmaReport verify_progression_sum(std::uint64_t seed, long long trials = 10000);

}  // namespace bsq
