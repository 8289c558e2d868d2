#include "bsq/propagators.hpp"

#include <cmath>

namespace bsq {

SpectralField apply_vc(const SpectralField& phi, double t) {
  SpectralField out(phi.grid());
  for (int n = -phi.half_modes(); n <= phi.half_modes(); ++n)
    out.coeff(n) = std::cos(t * dispersion(n)) * phi.coeff(n);
  return out;
}

SpectralField apply_vs_dx(const SpectralField& psi, double t) {
  SpectralField out(psi.grid());
  for (int n = -psi.half_modes(); n <= psi.half_modes(); ++n) {
    if (n == 0) continue;
    const double g = dispersion(n);
    out.coeff(n) = cplx(0.0, n) * (std::sin(t * g) / g) * psi.coeff(n);
  }
  return out;
}

SpectralField linear_solution(const SpectralField& phi, const SpectralField& psi, double t) {
  return apply_vc(phi, t) + apply_vs_dx(psi, t);
}

ModePairState linear_flow(const ModePairState& state, double t) {
  ModePairState out{SpectralField(state.u.grid()), SpectralField(state.ut.grid())};
  for (int n = -state.u.half_modes(); n <= state.u.half_modes(); ++n) {
    const double g = dispersion(n);
    const double c = std::cos(t * g);
    // sin(t g)/g extended continuously through g = 0.
    const double s = g > 0.0 ? std::sin(t * g) / g : t;
    out.u.coeff(n) = c * state.u.coeff(n) + s * state.ut.coeff(n);
    out.ut.coeff(n) = -g * std::sin(t * g) * state.u.coeff(n) + c * state.ut.coeff(n);
  }
  return out;
}

double linear_residual(const LinearSolution& sol, double t, double dt_fd) {
  const SpectralField um = sol.at(t - dt_fd);
  const SpectralField u0 = sol.at(t);
  const SpectralField up = sol.at(t + dt_fd);
  SpectralField res(u0.grid());
  for (int n = -u0.half_modes(); n <= u0.half_modes(); ++n) {
    const double g2 = dispersion(n) * dispersion(n);  // n^2 + n^4
    const cplx utt = (up.coeff(n) - 2.0 * u0.coeff(n) + um.coeff(n)) / (dt_fd * dt_fd);
    res.coeff(n) = utt + g2 * u0.coeff(n);
  }
  double sup = 0.0;
  for (const cplx& v : inverse_transform(res)) sup = std::max(sup, std::abs(v));
  return sup;
}

}  // namespace bsq
