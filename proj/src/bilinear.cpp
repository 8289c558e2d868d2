#include "bsq/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bsq {

namespace {

// [first, last] indices of the nonzero entries of a column, or {1, 0} if none.
std::pair<int, int> nonzero_range(const std::vector<cplx>& col) {
  int lo = 0, hi = static_cast<int>(col.size()) - 1;
  while (lo <= hi && col[lo] == cplx{}) ++lo;
  while (hi >= lo && col[hi] == cplx{}) --hi;
  return {lo, hi};
}

}  // namespace

SpaceTimeField bilinear_operator(const SpaceTimeField& u, const SpaceTimeField& v) {
  if (!(u.grid() == v.grid()))
    throw std::invalid_argument("bilinear_operator: grid mismatch");
  const GridSpec& grid = u.grid();
  if (grid.tau_points % 2 == 0)
    throw std::invalid_argument("bilinear_operator: tau_points must be odd (tau = 0 on grid)");
  const int M = grid.half_modes();
  const int zero = (grid.tau_points - 1) / 2;  // index of tau = 0
  const double dtau = grid.tau_spacing();

  SpaceTimeField out(grid);
  for (int n1 = -M; n1 <= M; ++n1) {
    if (!u.has_col(n1)) continue;
    const auto [lo1, hi1] = nonzero_range(u.col(n1));
    if (lo1 > hi1) continue;
    for (int n2 = -M; n2 <= M; ++n2) {
      if (!v.has_col(n2)) continue;
      const int n = n1 + n2;
      if (n == 0 || std::abs(n) > M) continue;  // multiplier kills n = 0
      const auto [lo2, hi2] = nonzero_range(v.col(n2));
      if (lo2 > hi2) continue;
      const cplx mult =
          static_cast<double>(n) * n / (cplx(0.0, 2.0) * dispersion(n)) * dtau;
      auto& dst = out.ensure_col(n);
      const auto& cu = u.col(n1);
      const auto& cv = v.col(n2);
      for (int a = lo1; a <= hi1; ++a) {
        if (cu[a] == cplx{}) continue;
        const cplx ua = mult * cu[a];
        const int mlo = std::max(lo2 + a - zero, 0);
        const int mhi = std::min(hi2 + a - zero, grid.tau_points - 1);
        for (int m = mlo; m <= mhi; ++m) dst[m] += ua * cv[m - a + zero];
      }
    }
  }
  return out;
}

double estimate_ratio(const SpaceTimeField& u, const SpaceTimeField& v, const XsbParams& p) {
  const double nu = xsb_norm(u, p.s, p.b, WeightKind::boussinesq);
  const double nv = xsb_norm(v, p.s, p.b, WeightKind::boussinesq);
  if (nu == 0.0 || nv == 0.0) throw UndefinedRatioError("estimate_ratio: zero input field");
  const SpaceTimeField w = bilinear_operator(u, v);
  return xsb_norm(w, p.s, -p.a, WeightKind::schrodinger) / (nu * nv);
}

GridSpec counterexample_grid(int N) {
  const double tau_max = static_cast<double>(N) * N + 4.0;
  const int tau_points = static_cast<int>(std::llround(8.0 * tau_max)) + 1;
  return GridSpec(2 * N, tau_points, tau_max, 0.1, 0.5);
}

CounterexamplePair counterexample_pair(int N, const GridSpec& grid) {
  if (N < 2) throw std::invalid_argument("counterexample_pair: need N >= 2");
  const double needed_tau = static_cast<double>(N) * N + 2.0;
  if (grid.half_modes() < N || grid.tau_max < needed_tau)
    throw ResolutionError("counterexample_pair: grid too small, need num_modes >= " +
                          std::to_string(2 * N) + " and tau_max >= " +
                          std::to_string(needed_tau));

  CounterexamplePair pair{N, SpaceTimeField(grid), SpaceTimeField(grid)};
  auto& fc = pair.f.ensure_col(N);
  auto& gc = pair.g.ensure_col(1 - N);
  const double nf = static_cast<double>(N) * N;
  const double ng = static_cast<double>(1 - N) * (1 - N);
  for (int j = 0; j < grid.tau_points; ++j) {
    const double tau = grid.tau_node(j);
    if (std::abs(tau - nf) <= 2.0) fc[j] = 1.0;   // chi((tau - n^2)/2)
    if (std::abs(tau + ng) <= 2.0) gc[j] = 1.0;   // chi((tau + n^2)/2)
  }
  return pair;
}

ProbeReport sharpness_sweep(const XsbParams& p, std::span<const int> N_list, int workers) {
  if (N_list.size() < 5)
    throw std::invalid_argument("sharpness_sweep: need >= 5 N values");
  if (!std::is_sorted(N_list.begin(), N_list.end()))
    throw std::invalid_argument("sharpness_sweep: N_list must be ascending");

  ProbeReport report;
  report.params = p;
  report.family = "counterexample";
  report.x_values.assign(N_list.begin(), N_list.end());
  report.ratios.assign(N_list.size(), 0.0);
  parallel_for(N_list.size(), workers, [&](std::size_t i) {
    const int N = N_list[i];
    const GridSpec grid = counterexample_grid(N);
    const CounterexamplePair pair = counterexample_pair(N, grid);
    report.ratios[i] = estimate_ratio(pair.f, pair.g, p);
  });

  std::vector<double> lx(N_list.size()), ly(N_list.size());
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    lx[i] = std::log(report.x_values[i]);
    ly[i] = std::log(report.ratios[i]);
  }
  report.slope = fit_slope(lx, ly);
  report.predicted_slope = -2.0 * p.s - p.a;
  report.verdict =
      report.slope > 0.1 ? ProbeReport::Verdict::growing : ProbeReport::Verdict::bounded;
  return report;
}

Region region_classify(long long n, long long n1, double tau, double tau1, SignCase sign_case) {
  const double n2d = static_cast<double>(n - n1);
  const double sigma = tau - static_cast<double>(n) * n;
  if (sign_case == SignCase::VI) {
    if (n == 0) return Region::A1;
    if (n1 == 0 || n1 == n) return Region::A2;
    const double sigma1 = tau1 - static_cast<double>(n1) * n1;
    return std::abs(sigma1) <= std::abs(sigma) ? Region::A31 : Region::A32;
  }
  if (n == 0) return Region::B1;
  if (n1 == 0) return Region::B2;
  const double sigma1 = tau1 + static_cast<double>(n1) * n1;
  const double sigma2 = (tau - tau1) - n2d * n2d;
  if (std::abs(sigma1) <= std::abs(sigma) && std::abs(sigma2) <= std::abs(sigma))
    return Region::B31;
  if (std::abs(sigma) <= std::abs(sigma1) && std::abs(sigma2) <= std::abs(sigma1))
    return Region::B32;
  return Region::B33;
}

AlgebraicIdentity algebraic_relation(long long n, long long n1, double tau, double tau1,
                                     SignCase sign_case) {
  const double nn = static_cast<double>(n) * n;
  const double n1n1 = static_cast<double>(n1) * n1;
  const double n2d = static_cast<double>(n - n1);
  const double sigma2 = (tau - tau1) - n2d * n2d;
  AlgebraicIdentity id;
  if (sign_case == SignCase::VI) {
    id.lhs = -(tau - nn) + (tau1 - n1n1) + sigma2;
    id.rhs = 2.0 * static_cast<double>(n1) * static_cast<double>(n - n1);
  } else {
    id.lhs = -(tau - nn) + (tau1 + n1n1) + sigma2;
    id.rhs = 2.0 * static_cast<double>(n1) * static_cast<double>(n);
  }
  return id;
}

namespace {

double bracket_pow(double x, double e) { return std::pow(bracket(x), e); }

// <n>^{2s} <n1>^{-2s} <n-n1>^{-2s}
double mode_weight(long long n, long long n1, double s) {
  return bracket_pow(static_cast<double>(n), 2.0 * s) *
         bracket_pow(static_cast<double>(n1), -2.0 * s) *
         bracket_pow(static_cast<double>(n - n1), -2.0 * s);
}

double symbol_factor(long long n) {
  if (n == 0) return 0.0;
  const double g = dispersion(n);
  const double nn = static_cast<double>(n) * n;
  return nn * nn / (g * g);  // |n|^4 / gamma(n)^2 <= 1
}

// Outer tau samples for mode m: dense geometric ladder around +-m^2 plus a
// coarse uniform cover of [-tau_max, tau_max].
std::vector<double> stratified_taus(long long m, double tau_max) {
  std::vector<double> taus;
  const double mm = static_cast<double>(m) * m;
  for (double center : {mm, -mm}) {
    taus.push_back(center);
    for (double d = 0.25; d <= tau_max; d *= 2.0) {
      if (center + d <= tau_max) taus.push_back(center + d);
      if (center - d >= -tau_max) taus.push_back(center - d);
    }
    if (center == -mm) break;  // m = 0: both centers coincide
  }
  for (int j = -8; j <= 8; ++j) taus.push_back(tau_max * j / 8.0);
  return taus;
}

bool in_default_regions(SupKind kind, Region r) {
  switch (kind) {
    case SupKind::J1: return r == Region::A1 || r == Region::A2 || r == Region::A31;
    case SupKind::J2: return r == Region::A32;
    case SupKind::K1: return r == Region::B1 || r == Region::B2 || r == Region::B31;
    case SupKind::K2: return r == Region::B32;
    case SupKind::K3: return r == Region::B33;
  }
  return false;
}

}  // namespace

double sup_estimator(SupKind kind, const XsbParams& p, const SampleBox& box,
                     std::optional<Region> only_region) {
  if (!p.admissible())
    throw std::domain_error("sup_estimator: params outside the admissible cases");
  const double s = p.s, a = p.a, b = p.b;
  const auto keep = [&](Region r) {
    return only_region ? r == *only_region : in_default_regions(kind, r);
  };

  double sup = 0.0;
  for (long long m = -box.n_max; m <= box.n_max; ++m) {
    for (double tau_out : stratified_taus(m, box.tau_max)) {
      double sum = 0.0;
      double pref = 0.0;
      switch (kind) {
        case SupKind::J1: {
          // outer (n, tau); inner n1 with tau1 pinned at the resonance n1^2
          pref = bracket_pow(tau_out - static_cast<double>(m) * m, -2.0 * a) * symbol_factor(m);
          if (pref == 0.0) break;
          for (long long n1 = -box.n1_max; n1 <= box.n1_max; ++n1) {
            const double tau1 = static_cast<double>(n1) * n1;
            if (!keep(region_classify(m, n1, tau_out, tau1, SignCase::VI))) continue;
            const double den = tau_out - static_cast<double>(m) * m -
                               2.0 * static_cast<double>(n1) * n1 +
                               2.0 * static_cast<double>(m) * n1;
            sum += mode_weight(m, n1, s) * bracket_pow(den, -2.0 * b);
          }
          break;
        }
        case SupKind::J2: {
          // outer (n1, tau1); inner n with tau pinned at n^2
          pref = bracket_pow(tau_out - static_cast<double>(m) * m, -2.0 * b);
          for (long long n = -box.n1_max; n <= box.n1_max; ++n) {
            const double tau = static_cast<double>(n) * n;
            if (!keep(region_classify(n, m, tau, tau_out, SignCase::VI))) continue;
            const double den = tau_out + static_cast<double>(m) * m -
                               2.0 * static_cast<double>(n) * m;
            sum += symbol_factor(n) * mode_weight(n, m, s) * bracket_pow(den, -2.0 * a);
          }
          break;
        }
        case SupKind::K1: {
          pref = bracket_pow(tau_out - static_cast<double>(m) * m, -2.0 * a) * symbol_factor(m);
          if (pref == 0.0) break;
          for (long long n1 = -box.n1_max; n1 <= box.n1_max; ++n1) {
            const double tau1 = -static_cast<double>(n1) * n1;
            if (!keep(region_classify(m, n1, tau_out, tau1, SignCase::IV))) continue;
            const double den = tau_out - static_cast<double>(m) * m +
                               2.0 * static_cast<double>(m) * n1;
            sum += mode_weight(m, n1, s) * bracket_pow(den, -2.0 * b);
          }
          break;
        }
        case SupKind::K2: {
          pref = bracket_pow(tau_out + static_cast<double>(m) * m, -2.0 * b);
          for (long long n = -box.n1_max; n <= box.n1_max; ++n) {
            const double tau = static_cast<double>(n) * n;
            if (!keep(region_classify(n, m, tau, tau_out, SignCase::IV))) continue;
            const double den = tau_out + static_cast<double>(m) * m -
                               2.0 * static_cast<double>(n) * m;
            sum += symbol_factor(n) * mode_weight(n, m, s) * bracket_pow(den, -2.0 * a);
          }
          break;
        }
        case SupKind::K3: {
          // outer (n2, tau2); inner n1 with tau1 pinned at -n1^2
          pref = bracket_pow(tau_out - static_cast<double>(m) * m, -2.0 * b);
          for (long long n1 = -box.n1_max; n1 <= box.n1_max; ++n1) {
            const double tau1 = -static_cast<double>(n1) * n1;
            if (!keep(region_classify(n1 + m, n1, tau1 + tau_out, tau1, SignCase::IV)))
              continue;
            const double den = tau_out - static_cast<double>(m) * m -
                               2.0 * static_cast<double>(n1) * n1 -
                               2.0 * static_cast<double>(n1) * m;
            sum += symbol_factor(n1 + m) * mode_weight(n1 + m, n1, s) *
                   bracket_pow(den, -2.0 * a);
          }
          break;
        }
      }
      sup = std::max(sup, pref * sum);
    }
  }
  return sup;
}

ProbeReport k2_tilde_divergence(std::span<const int> N_list, double s, double a, double b) {
  ProbeReport report;
  report.params = XsbParams{s, b, a};
  report.family = "k2_tilde_lower_bound";
  for (int N : N_list) {
    // tau1 = -N^2, n1 = N: the modulation bracket collapses to <0> = 1.
    const double term = bracket_pow(static_cast<double>(N), -4.0 * s) /
                        bracket_pow(0.0, 2.0 * a + 2.0 * b);
    report.x_values.push_back(N);
    report.ratios.push_back(term);
  }
  if (report.x_values.size() >= 2) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < report.x_values.size(); ++i) {
      lx.push_back(std::log(report.x_values[i]));
      ly.push_back(std::log(report.ratios[i]));
    }
    report.slope = fit_slope(lx, ly);
  }
  report.predicted_slope = std::max(0.0, -4.0 * s);
  report.verdict =
      report.slope > 0.1 ? ProbeReport::Verdict::growing : ProbeReport::Verdict::bounded;
  return report;
}

}  // namespace bsq
