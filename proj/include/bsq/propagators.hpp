#pragma once

#include "bsq/grid.hpp"

namespace bsq {

// Linear "good" Boussinesq group u_tt - u_xx + u_xxxx = 0, diagonal in Fourier.

// V_c(t): mode-wise multiplication by cos(t * gamma(n)).
SpectralField apply_vc(const SpectralField& phi, double t);

// V_s(t) d_x: psi^(n) -> i n sin(t * gamma(n)) / gamma(n) * psi^(n).
// The n = 0 mode is zero (the derivative kills it before gamma(0) = 0 can).
SpectralField apply_vs_dx(const SpectralField& psi, double t);

// u(t) = V_c(t) phi + V_s(t) psi_x.
SpectralField linear_solution(const SpectralField& phi, const SpectralField& psi, double t);

// First-order system state (u^, u_t^) advanced by the exact rotation;
// used for the group-property check and by the reference integrator.
struct ModePairState {
  SpectralField u;
  SpectralField ut;
};
ModePairState linear_flow(const ModePairState& state, double t);

struct LinearSolution {
  SpectralField phi;
  SpectralField psi;
  SpectralField at(double t) const { return linear_solution(phi, psi, t); }
};

// Sup-norm over the x-grid of u_tt - u_xx + u_xxxx at time t, with u_tt by a
// centered difference of step dt_fd and the spatial part exact in Fourier.
// O(dt_fd^2) for trig-polynomial data.
double linear_residual(const LinearSolution& sol, double t, double dt_fd);

}  // namespace bsq
