#pragma once

#include <vector>

#include "bsq/propagators.hpp"

namespace bsq {

// Smooth even plateau bump: theta == 1 on [-1,1], theta == 0 outside [-2,2],
// glued with the standard exp(-1/x) smoothstep. theta_T(t) = theta(t/T).
struct TimeCutoff {
  double T = 1.0;  // in (0,1] ; T = 1 gives plain theta

  double theta(double t) const;                      // unscaled profile
  double operator()(double t) const { return theta(t / T); }
  double support_radius() const { return 2.0 * T; }
};

// States on the uniform time grid t_k = t_start + k * dt.
struct Trajectory {
  GridSpec grid;
  double t_start = 0.0;
  double dt = 0.0;
  std::vector<SpectralField> states;

  int size() const { return static_cast<int>(states.size()); }
  double time(int k) const { return t_start + k * dt; }
  double t_end() const { return time(size() - 1); }
  const SpectralField& state(int k) const { return states[k]; }

  // Index of the node at time t; throws std::domain_error if t is off-grid.
  int node_index(double t) const;
};

// Linear solution sampled on n_steps+1 nodes starting at t_start.
Trajectory linear_trajectory(const SpectralField& phi, const SpectralField& psi, double t_start,
                             double dt, int n_steps);

// Fourier coefficients of u^2, pseudospectral with 2/3-rule dealiasing:
// modes |n| > (2/3) M are zeroed before and after squaring.
SpectralField nonlinearity(const SpectralField& u);

// Forcing integral of the solution representation at a grid node t:
//   mode n:  int_0^t  sin((t-t') gamma(n)) / gamma(n) * n^2 (u^2)^(n)(t') dt'
// by composite trapezoid on the trajectory's own nodes. Both 0 and t must be
// grid nodes. The n = 0 contribution is zero (n^2 / gamma(n) <= 1 throughout).
SpectralField duhamel_integral(const Trajectory& u, double t);

struct PicardHistory {
  std::vector<double> increments;  // sup-in-t H^s distance between iterates
  int iterations = 0;
  bool converged = false;

  // increment[k+1] / increment[k]; < 1 along a contraction.
  std::vector<double> contraction_factors() const;
};

// Picard did not contract within max_iters; T is too large for the data.
class PicardDivergenceError : public std::runtime_error {
public:
  PicardDivergenceError(std::string what, PicardHistory history)
      : std::runtime_error(std::move(what)), history(std::move(history)) {}
  PicardHistory history;
};

struct PicardResult {
  Trajectory trajectory;
  PicardHistory history;
};

// Fixed-point iteration of u = V_c phi + V_s psi_x + Duhamel(u^2) on [0, T],
// nodes spaced by dt. Convergence is measured in sup-in-t H^s.
PicardResult picard_solve(const SpectralField& phi, const SpectralField& psi, double T, double dt,
                          int max_iters, double tol, double s = 0.0,
                          bool nonlinear = true);

// Independent oracle: integrates u^_tt = -gamma(n)^2 u^ + n^2 (u^2)^(n) with
// the linear part rotated exactly and the forcing by Lawson RK4 stages.
Trajectory reference_timestep(const SpectralField& phi, const SpectralField& psi, double T,
                              double dt, bool nonlinear = true);

}  // namespace bsq
