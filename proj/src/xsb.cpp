#include "bsq/xsb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bsq {

std::vector<cplx>& SpaceTimeField::ensure_col(int n) {
  auto& c = cols_[grid_.mode_index(n)];
  if (c.empty()) c.assign(grid_.tau_points, cplx{});
  return c;
}

cplx SpaceTimeField::at(int n, int j) const {
  const auto& c = cols_[grid_.mode_index(n)];
  return c.empty() ? cplx{} : c[j];
}

double SpaceTimeField::tau_weight(int j) const {
  const double d = grid_.tau_spacing();
  return (j == 0 || j == grid_.tau_points - 1) ? 0.5 * d : d;
}

double SpaceTimeField::squared_mass() const {
  double sum = 0.0;
  for (const auto& c : cols_) {
    if (c.empty()) continue;
    for (int j = 0; j < grid_.tau_points; ++j) sum += tau_weight(j) * std::norm(c[j]);
  }
  return sum;
}

double SpaceTimeField::tau_tail_fraction() const {
  const double cut = 0.9 * grid_.tau_max;
  double total = 0.0, tail = 0.0;
  for (int i = 0; i < grid_.mode_count(); ++i) {
    const auto& c = cols_[i];
    if (c.empty()) continue;
    for (int j = 0; j < grid_.tau_points; ++j) {
      const double m = tau_weight(j) * std::norm(c[j]);
      total += m;
      if (std::abs(grid_.tau_node(j)) >= cut) tail += m;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

SpaceTimeField& SpaceTimeField::operator*=(cplx scale) {
  for (auto& c : cols_)
    for (auto& v : c) v *= scale;
  return *this;
}

XsbParams::Admissibility XsbParams::classify() const {
  const bool ab_ok = b > 0.5 && a > 0.25 && a < 0.5;
  if (s >= 0.0 && ab_ok) return Admissibility::case_i;
  if (s > -0.25 && s < 0.0 && ab_ok && std::abs(s) < a / 2.0) return Admissibility::case_ii;
  return Admissibility::inadmissible;
}

double modulation_weight(double tau, int n, WeightKind kind) {
  const double surface =
      kind == WeightKind::boussinesq ? dispersion(n) : static_cast<double>(n) * n;
  return bracket(std::abs(tau) - surface);
}

double xsb_norm(const SpaceTimeField& F, double s, double b, WeightKind weight) {
  const GridSpec& grid = F.grid();
  double sum = 0.0;
  for (int n = -grid.half_modes(); n <= grid.half_modes(); ++n) {
    if (!F.has_col(n)) continue;
    const double ws = std::pow(bracket(n), 2.0 * s);
    const auto& c = F.col(n);
    for (int j = 0; j < grid.tau_points; ++j) {
      if (c[j] == cplx{}) continue;
      const double wm = std::pow(modulation_weight(grid.tau_node(j), n, weight), 2.0 * b);
      sum += F.tau_weight(j) * ws * wm * std::norm(c[j]);
    }
  }
  return std::sqrt(sum);
}

double norm_equivalence_ratio(const SpaceTimeField& F, double s, double b) {
  const double denom = xsb_norm(F, s, b, WeightKind::schrodinger);
  if (denom == 0.0) throw UndefinedRatioError("norm_equivalence_ratio: zero field");
  return xsb_norm(F, s, b, WeightKind::boussinesq) / denom;
}

SpaceTimeField transform_windowed(const Trajectory& traj,
                                  const std::function<double(double)>& window) {
  const GridSpec& grid = traj.grid;
  const double span = traj.t_end() - traj.t_start;
  if (grid.tau_spacing() > std::numbers::pi / span + 1e-12)
    throw ResolutionError("transform_windowed: tau grid too coarse for this time window");

  const int K = traj.size();
  std::vector<double> win(K);
  for (int k = 0; k < K; ++k) win[k] = window(traj.time(k));

  SpaceTimeField F(grid);
  for (int n = -grid.half_modes(); n <= grid.half_modes(); ++n) {
    bool any = false;
    for (int k = 0; k < K; ++k)
      if (win[k] != 0.0 && traj.state(k).coeff(n) != cplx{}) {
        any = true;
        break;
      }
    if (!any) continue;
    auto& col = F.ensure_col(n);
    for (int j = 0; j < grid.tau_points; ++j) {
      const double tau = grid.tau_node(j);
      cplx acc{};
      for (int k = 0; k < K; ++k) {
        if (win[k] == 0.0) continue;
        const double w = (k == 0 || k == K - 1) ? 0.5 : 1.0;
        acc += w * win[k] * traj.state(k).coeff(n) * std::polar(1.0, -tau * traj.time(k));
      }
      col[j] = traj.dt * acc;
    }
  }
  return F;
}

SpaceTimeField time_space_transform(const Trajectory& traj, const TimeCutoff& cutoff) {
  const double R = cutoff.support_radius();
  if (traj.t_start > -R + 1e-9 || traj.t_end() < R - 1e-9)
    throw ResolutionError("time_space_transform: trajectory does not cover the cutoff support");
  return transform_windowed(traj, [&](double t) { return cutoff(t); });
}

double windowed_time_mass(const Trajectory& traj, const std::function<double(double)>& window) {
  double sum = 0.0;
  const int K = traj.size();
  for (int k = 0; k < K; ++k) {
    const double win = window(traj.time(k));
    if (win == 0.0) continue;
    const double w = (k == 0 || k == K - 1) ? 0.5 : 1.0;
    double s = 0.0;
    for (const cplx& c : traj.state(k).raw()) s += std::norm(c);
    sum += w * win * win * s;
  }
  return traj.dt * sum;
}

double linear_estimate_probe(const SpectralField& phi, const SpectralField& psi, double s,
                             double b) {
  if (!(b > 0.5)) throw std::domain_error("linear_estimate_probe: requires b > 1/2");
  const double denom = sobolev_norm(phi, s) + sobolev_norm(psi, s - 1.0);
  if (denom == 0.0) throw UndefinedRatioError("linear_estimate_probe: zero data");
  const GridSpec& grid = phi.grid();
  const int n_steps = static_cast<int>(std::ceil(4.0 / grid.t_step));
  Trajectory traj = linear_trajectory(phi, psi, -2.0, grid.t_step, n_steps);
  const SpaceTimeField F = time_space_transform(traj, TimeCutoff{1.0});
  return xsb_norm(F, s, b, WeightKind::boussinesq) / denom;
}

double duhamel_estimate_probe(const Trajectory& source, double s, double b, double b_prime,
                              double T) {
  if (!(b_prime > -0.5 && b_prime <= 0.0 && b >= 0.0 && b <= b_prime + 1.0))
    throw std::domain_error("duhamel_estimate_probe: need -1/2 < b' <= 0 <= b <= b'+1");
  if (!(T > 0.0 && T <= 1.0)) throw std::domain_error("duhamel_estimate_probe: need 0 < T <= 1");
  const GridSpec& grid = source.grid;
  for (int k = 0; k < source.size(); ++k)
    if (std::abs(source.state(k).coeff(0)) > 0.0)
      throw std::domain_error("duhamel_estimate_probe: source must have zero n=0 mode");

  const TimeCutoff cutoff{T};
  const double R = cutoff.support_radius();
  if (source.t_start > -R + 1e-9 || source.t_end() < R - 1e-9)
    throw ResolutionError("duhamel_estimate_probe: source does not cover [-2T, 2T]");

  // h(t) = int_0^t V_s(t - t') g(t') dt' on the source nodes inside the window.
  const int k_zero = source.node_index(0.0);
  const int K = source.size();
  Trajectory h{grid, source.t_start, source.dt, {}};
  h.states.assign(K, SpectralField(grid));
  for (int k = 0; k < K; ++k) {
    const double t = source.time(k);
    if (std::abs(t) > R + source.dt) continue;  // killed by theta_T anyway
    const int lo = std::min(k, k_zero);
    const int hi = std::max(k, k_zero);
    if (lo == hi) continue;
    const double sign = k >= k_zero ? 1.0 : -1.0;
    for (int n = -grid.half_modes(); n <= grid.half_modes(); ++n) {
      if (n == 0) continue;
      const double g = dispersion(n);
      cplx acc{};
      for (int j = lo; j <= hi; ++j) {
        const double w = (j == lo || j == hi) ? 0.5 : 1.0;
        acc += w * std::sin((t - source.time(j)) * g) * source.state(j).coeff(n);
      }
      h.states[k].coeff(n) = sign * source.dt / g * acc;
    }
  }
  const SpaceTimeField lhs_field = time_space_transform(h, cutoff);
  const double lhs = xsb_norm(lhs_field, s, b, WeightKind::boussinesq);
  if (lhs == 0.0) return 0.0;

  SpaceTimeField g_field = transform_windowed(source, [](double) { return 1.0; });
  SpaceTimeField rhs_field(grid);
  for (int n = -grid.half_modes(); n <= grid.half_modes(); ++n) {
    if (n == 0 || !g_field.has_col(n)) continue;
    auto& col = rhs_field.ensure_col(n);
    const cplx scale = 1.0 / (cplx(0.0, 2.0) * dispersion(n));
    for (int j = 0; j < grid.tau_points; ++j) col[j] = scale * g_field.col(n)[j];
  }
  const double rhs = xsb_norm(rhs_field, s, b_prime, WeightKind::boussinesq);
  return lhs / (std::pow(T, 1.0 - (b - b_prime)) * rhs);
}

}  // namespace bsq
