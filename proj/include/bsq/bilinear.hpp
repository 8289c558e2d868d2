#pragma once

#include <optional>
#include <string>

#include "bsq/xsb.hpp"

namespace bsq {

// Product operator of the bilinear estimate:
//   ( |n|^2 (u~ * v~)(tau, n) / (2 i gamma(n)) )
// with the (n, tau)-convolution done by direct quadrature-weighted summation
// and the n = 0 mode set to zero. |n|^2 / gamma(n) <= 1 for every n.
// Requires matching grids with an odd tau_points count (tau = 0 on the grid).
SpaceTimeField bilinear_operator(const SpaceTimeField& u, const SpaceTimeField& v);

// ||bilinear_operator(u,v)||_{X_{s,-a}} / (||u||_{X_{s,b}} ||v||_{X_{s,b}}).
// The output norm uses the <|tau| - n^2> weight (the |tau| convention of the
// counterexample section); the input norms use the dispersive weight.
double estimate_ratio(const SpaceTimeField& u, const SpaceTimeField& v, const XsbParams& p);

// Frequency-concentrated pair driving the sharpness counterexample:
// f(tau, n) = chi((tau - n^2)/2) at n = N only, g(tau, n) = chi((tau + n^2)/2)
// at n = 1 - N only, chi the indicator of [-1, 1]. Their convolution lives at
// n = 1 exclusively.
struct CounterexamplePair {
  int N = 0;
  SpaceTimeField f;
  SpaceTimeField g;
};
CounterexamplePair counterexample_pair(int N, const GridSpec& grid);

// Smallest grid accommodating counterexample_pair(N, .): modes +-N and
// tau range N^2 + 4 at spacing 0.25.
GridSpec counterexample_grid(int N);

struct ProbeReport {
  XsbParams params;
  std::string family;
  std::vector<double> x_values;  // N values (or sweep abscissae)
  std::vector<double> ratios;
  double slope = 0.0;            // least-squares fit of log(ratio) vs log(x)
  double predicted_slope = 0.0;
  enum class Verdict { bounded, growing };
  Verdict verdict = Verdict::bounded;
};

// estimate_ratio over counterexample pairs for each N; slope of the log-log
// fit against the predicted exponent -2s - a. Needs >= 5 ascending N values.
ProbeReport sharpness_sweep(const XsbParams& p, std::span<const int> N_list, int workers = 1);

// Region labels of the two irreducible sign cases.
enum class Region { A1, A2, A31, A32, B1, B2, B31, B32, B33 };
enum class SignCase { IV, VI };

// Case VI partitions on (sigma, sigma1) = (tau - n^2, tau1 - n1^2); case IV on
// (tau - n^2, tau1 + n1^2, (tau - tau1) - (n - n1)^2). Ties break in the
// listed order. Case VI assumes the |sigma2| <= |sigma1| half (the symmetry
// reduction); callers swap arguments for the other half.
Region region_classify(long long n, long long n1, double tau, double tau1, SignCase sign_case);

// Both sides of the resonance identity:
//   case VI: -(tau-n^2) + (tau1-n1^2) + ((tau-tau1)-(n-n1)^2) = 2 n1 (n-n1)
//   case IV: -(tau-n^2) + (tau1+n1^2) + ((tau-tau1)-(n-n1)^2) = 2 n1 n
struct AlgebraicIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};
AlgebraicIdentity algebraic_relation(long long n, long long n1, double tau, double tau1,
                                     SignCase sign_case);

enum class SupKind { J1, J2, K1, K2, K3 };

struct SampleBox {
  int n_max = 32;        // outer mode bound
  int n1_max = 256;      // inner summation bound
  double tau_max = 1024; // outer modulation bound
};

// Truncated, region-restricted sup quantity of the bilinear analysis. The
// outer (mode, tau) pair runs over a deterministic stratified lattice, dense
// near the parabolas tau = +-n^2 and geometrically sparser away from them.
// The integrated-out modulation is pinned at its resonant value. Requires
// admissible params; only_region restricts the inner sum to one label.
double sup_estimator(SupKind kind, const XsbParams& p, const SampleBox& box,
                     std::optional<Region> only_region = std::nullopt);

// Divergent lower-bound term of the untruncated K2 sum: <n1>^{-4s} / <tau1+n1^2>^{2a+2b}
// at tau1 = -N^2, n1 = N. The fitted slope equals -4s up to lattice effects.
ProbeReport k2_tilde_divergence(std::span<const int> N_list, double s, double a, double b);

}  // namespace bsq
