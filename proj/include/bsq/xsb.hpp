#pragma once

#include <functional>

#include "bsq/duhamel.hpp"

namespace bsq {

// Complex coefficients F~(n, tau_j) on the (mode x tau-grid) lattice.
// Columns are allocated lazily; an empty column is identically zero, which
// keeps frequency-concentrated fields (counterexample pairs) cheap.
class SpaceTimeField {
public:
  SpaceTimeField() = default;
  explicit SpaceTimeField(const GridSpec& grid) : grid_(grid), cols_(grid.mode_count()) {}

  const GridSpec& grid() const { return grid_; }
  int half_modes() const { return grid_.half_modes(); }

  bool has_col(int n) const { return !cols_[grid_.mode_index(n)].empty(); }
  const std::vector<cplx>& col(int n) const { return cols_[grid_.mode_index(n)]; }
  std::vector<cplx>& ensure_col(int n);

  cplx at(int n, int j) const;
  void set(int n, int j, cplx v) { ensure_col(n)[j] = v; }

  // Trapezoid weight of tau node j.
  double tau_weight(int j) const;

  // sum_n int |F|^2 dtau by trapezoid (no 2*pi factor).
  double squared_mass() const;

  // Fraction of squared mass carried by the top 10% |tau| nodes.
  double tau_tail_fraction() const;

  SpaceTimeField& operator*=(cplx scale);

private:
  GridSpec grid_;
  std::vector<std::vector<cplx>> cols_;
};

// The exponent triple of the bilinear estimate, with the admissibility
// classification of the two good cases.
struct XsbParams {
  double s = 0.0;
  double b = 0.0;
  double a = 0.0;

  enum class Admissibility { case_i, case_ii, inadmissible };
  Admissibility classify() const;
  bool admissible() const { return classify() != Admissibility::inadmissible; }
};

enum class WeightKind { boussinesq, schrodinger };

// Modulation weight <|tau| - gamma(n)> (boussinesq) or <|tau| - n^2> (schrodinger).
double modulation_weight(double tau, int n, WeightKind kind);

// ||F|| = ( sum_n int <|tau|-gamma(n)>^{2b} <n>^{2s} |F~|^2 dtau )^{1/2}.
double xsb_norm(const SpaceTimeField& F, double s, double b,
                WeightKind weight = WeightKind::boussinesq);

// boussinesq / schrodinger norm; always within [(2/3)^|b|, (3/2)^|b|].
double norm_equivalence_ratio(const SpaceTimeField& F, double s, double b);

// Windows the trajectory in t and applies the quadrature Fourier transform
// t -> tau onto the grid's tau nodes: F~(n,tau_j) = sum_k w_k win(t_k) u^(n,t_k) e^{-i tau_j t_k}.
// Requires tau spacing <= pi / (time span) so the discrete tau mass is exact
// up to the truncated tails (throws ResolutionError otherwise).
SpaceTimeField transform_windowed(const Trajectory& traj,
                                  const std::function<double(double)>& window);

// transform_windowed with the cutoff as window; the trajectory must cover
// the cutoff support [-2T, 2T].
SpaceTimeField time_space_transform(const Trajectory& traj, const TimeCutoff& cutoff);

// sum_k w_k sum_n |win(t_k) u^(n,t_k)|^2 ; Parseval partner of squared_mass()/2pi.
double windowed_time_mass(const Trajectory& traj, const std::function<double(double)>& window);

// ||theta * (linear solution)||_{X_{s,b}} / (||phi||_{H^s} + ||psi||_{H^{s-1}}).
// Requires b > 1/2. The trajectory is built on [-2, 2] from the grid's t_step.
double linear_estimate_probe(const SpectralField& phi, const SpectralField& psi, double s,
                             double b);

// || theta_T(t) int_0^t V_s(t-t') g(t') dt' ||_{X_{s,b}}
//   / ( T^{1-(b-b')} || (g~ / 2 i gamma(n))^{~-1} ||_{X_{s,b'}} ).
// source carries g on nodes covering [-2T, 2T]; its n = 0 column must be zero.
// Requires -1/2 < b' <= 0 <= b <= b'+1 and 0 < T <= 1. Returns 0 for g == 0.
double duhamel_estimate_probe(const Trajectory& source, double s, double b, double b_prime,
                              double T);

}  // namespace bsq
