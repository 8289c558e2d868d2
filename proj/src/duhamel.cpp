#include "bsq/duhamel.hpp"

#include <cmath>
#include <stdexcept>

namespace bsq {

namespace {

double smoothstep01(double x) {
  // exp(-1/x) glue: 0 at x <= 0, 1 at x >= 1, C-infinity in between.
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

}  // namespace

double TimeCutoff::theta(double t) const {
  const double r = std::abs(t);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return smoothstep01(2.0 - r);
}

int Trajectory::node_index(double t) const {
  const double k = (t - t_start) / dt;
  const long long ki = std::llround(k);
  if (std::abs(k - ki) > 1e-9 || ki < 0 || ki >= size())
    throw std::domain_error("Trajectory: time is not a grid node in range");
  return static_cast<int>(ki);
}

Trajectory linear_trajectory(const SpectralField& phi, const SpectralField& psi, double t_start,
                             double dt, int n_steps) {
  Trajectory traj{phi.grid(), t_start, dt, {}};
  traj.states.reserve(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k)
    traj.states.push_back(linear_solution(phi, psi, t_start + k * dt));
  return traj;
}

SpectralField nonlinearity(const SpectralField& u) {
  const int M = u.half_modes();
  const int keep = (2 * M) / 3;
  SpectralField trunc = u;
  for (int n = -M; n <= M; ++n)
    if (std::abs(n) > keep) trunc.coeff(n) = 0.0;
  std::vector<cplx> samples = inverse_transform(trunc);
  for (auto& v : samples) v *= v;
  SpectralField sq = forward_transform(u.grid(), samples);
  for (int n = -M; n <= M; ++n)
    if (std::abs(n) > keep) sq.coeff(n) = 0.0;
  return sq;
}

namespace {

// Trapezoid sum of the Duhamel integrand given the squares at trajectory nodes.
SpectralField duhamel_from_squares(const Trajectory& u, const std::vector<SpectralField>& squares,
                                   int k_zero, int k_t) {
  const GridSpec& grid = u.grid;
  SpectralField out(grid);
  if (k_zero == k_t) return out;
  const int lo = std::min(k_zero, k_t);
  const int hi = std::max(k_zero, k_t);
  const double sign = k_t >= k_zero ? 1.0 : -1.0;  // int_0^t = -int_t^0
  const double t = u.time(k_t);
  const int M = grid.half_modes();
  for (int n = -M; n <= M; ++n) {
    if (n == 0) continue;
    const double g = dispersion(n);
    const double amp = static_cast<double>(n) * n / g;
    cplx acc{};
    for (int j = lo; j <= hi; ++j) {
      const double w = (j == lo || j == hi) ? 0.5 : 1.0;
      acc += w * std::sin((t - u.time(j)) * g) * squares[j].coeff(n);
    }
    out.coeff(n) = sign * amp * u.dt * acc;
  }
  return out;
}

}  // namespace

SpectralField duhamel_integral(const Trajectory& u, double t) {
  const int k_zero = u.node_index(0.0);
  const int k_t = u.node_index(t);
  std::vector<SpectralField> squares;
  squares.reserve(u.size());
  for (const auto& state : u.states) squares.push_back(nonlinearity(state));
  return duhamel_from_squares(u, squares, k_zero, k_t);
}

std::vector<double> PicardHistory::contraction_factors() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < increments.size(); ++k)
    if (increments[k - 1] > 0.0) out.push_back(increments[k] / increments[k - 1]);
  return out;
}

PicardResult picard_solve(const SpectralField& phi, const SpectralField& psi, double T, double dt,
                          int max_iters, double tol, double s, bool nonlinear) {
  if (!(T > 0.0 && T < 1.0)) throw std::invalid_argument("picard_solve: need 0 < T < 1");
  if (tol <= 0.0) throw std::invalid_argument("picard_solve: tol must be positive");
  const int n_steps = static_cast<int>(std::llround(T / dt));
  if (n_steps < 1 || std::abs(n_steps * dt - T) > 1e-9 * std::max(1.0, T))
    throw std::invalid_argument("picard_solve: dt must divide T");

  Trajectory linear = linear_trajectory(phi, psi, 0.0, dt, n_steps);
  Trajectory current = linear;
  PicardHistory history;

  for (int iter = 1; iter <= max_iters; ++iter) {
    Trajectory next = linear;
    if (nonlinear) {
      std::vector<SpectralField> squares;
      squares.reserve(current.size());
      for (const auto& state : current.states) squares.push_back(nonlinearity(state));
      for (int k = 0; k <= n_steps; ++k)
        next.states[k] += duhamel_from_squares(current, squares, 0, k);
    }
    double inc = 0.0;
    for (int k = 0; k <= n_steps; ++k) {
      SpectralField diff = next.states[k];
      diff += -1.0 * current.states[k];
      inc = std::max(inc, sobolev_norm(diff, s));
    }
    history.increments.push_back(inc);
    history.iterations = iter;
    current = std::move(next);
    if (inc < tol) {
      history.converged = true;
      return {std::move(current), std::move(history)};
    }
  }
  throw PicardDivergenceError("picard_solve: no contraction after max_iters (T too large?)",
                              history);
}

namespace {

// Forcing of the first-order system: (0, n^2 (u^2)^(n)).
SpectralField forcing(const SpectralField& u) {
  SpectralField f = nonlinearity(u);
  for (int n = -u.half_modes(); n <= u.half_modes(); ++n)
    f.coeff(n) *= static_cast<double>(n) * n;
  return f;
}

ModePairState add_scaled(ModePairState y, const SpectralField& w, double c) {
  y.ut += c * w;
  return y;
}

}  // namespace

Trajectory reference_timestep(const SpectralField& phi, const SpectralField& psi, double T,
                              double dt, bool nonlinear) {
  const int n_steps = static_cast<int>(std::llround(T / dt));
  if (n_steps < 1 || std::abs(n_steps * dt - T) > 1e-9 * std::max(1.0, T))
    throw std::invalid_argument("reference_timestep: dt must divide T");

  // u_t(0) = (psi)_x
  ModePairState y{phi, SpectralField(psi.grid())};
  for (int n = -psi.half_modes(); n <= psi.half_modes(); ++n)
    y.ut.coeff(n) = cplx(0.0, n) * psi.coeff(n);

  Trajectory traj{phi.grid(), 0.0, dt, {}};
  traj.states.reserve(n_steps + 1);
  traj.states.push_back(y.u);

  const double h = dt;
  for (int k = 0; k < n_steps; ++k) {
    if (!nonlinear) {
      y = linear_flow(y, h);
    } else {
      // Lawson RK4: the stiff linear part is rotated exactly, classical
      // stages act on the forcing (0, N(u)) only.
      const auto rot = [&](const SpectralField& w, double dh) {
        return linear_flow({SpectralField(phi.grid()), w}, dh);
      };
      const SpectralField N1 = forcing(y.u);
      const ModePairState a2 = linear_flow(add_scaled(y, N1, h / 2), h / 2);
      const SpectralField N2 = forcing(a2.u);
      const ModePairState a3 = add_scaled(linear_flow(y, h / 2), N2, h / 2);
      const SpectralField N3 = forcing(a3.u);
      const ModePairState rN3 = rot(N3, h / 2);
      ModePairState a4 = linear_flow(y, h);
      a4.u += h * rN3.u;
      a4.ut += h * rN3.ut;
      const SpectralField N4 = forcing(a4.u);

      ModePairState next = linear_flow(y, h);
      const ModePairState rN1 = rot(N1, h);
      const ModePairState rN2 = rot(N2, h / 2);
      next.u += (h / 6) * rN1.u + (h / 3) * (rN2.u + rN3.u);
      next.ut += (h / 6) * rN1.ut + (h / 3) * (rN2.ut + rN3.ut);
      next.ut += (h / 6) * N4;
      y = std::move(next);
    }
    traj.states.push_back(y.u);
  }
  return traj;
}

}  // namespace bsq
