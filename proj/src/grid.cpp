#include "bsq/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bsq {

double dispersion(long long n) {
  const double x = static_cast<double>(n);
  return std::sqrt(x * x + x * x * x * x);
}

GridSpec::GridSpec(int num_modes_, int tau_points_, double tau_max_, double t_step_,
                   double t_final_)
    : num_modes(num_modes_),
      tau_points(tau_points_),
      tau_max(tau_max_),
      t_step(t_step_),
      t_final(t_final_) {
  if (num_modes <= 0 || num_modes % 2 != 0)
    throw std::invalid_argument("GridSpec: num_modes must be a positive even integer");
  if (tau_points <= 1) throw std::invalid_argument("GridSpec: tau_points must be > 1");
  if (tau_max <= 0.0) throw std::invalid_argument("GridSpec: tau_max must be positive");
  if (t_step <= 0.0 || t_final <= 0.0)
    throw std::invalid_argument("GridSpec: time steps must be positive");
  // Width-2 cutoffs chi((tau -+ n^2)/2) need at least 8 nodes across their support.
  if (tau_spacing() > 0.25 + 1e-12)
    throw std::invalid_argument("GridSpec: tau spacing must be <= 0.25");
}

double SpectralField::hermitian_defect() const {
  double sup = 0.0, defect = 0.0;
  for (int n = 0; n <= half_modes(); ++n) {
    sup = std::max({sup, std::abs(coeff(n)), std::abs(coeff(-n))});
    defect = std::max(defect, std::abs(coeff(-n) - std::conj(coeff(n))));
  }
  return sup > 0.0 ? defect / sup : 0.0;
}

bool SpectralField::is_real_valued(double rel_tol) const { return hermitian_defect() <= rel_tol; }

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator*(double scale, SpectralField f) { return f *= scale; }

SpectralField forward_transform(const GridSpec& grid, std::span<const cplx> samples) {
  const int N = grid.num_modes;
  if (static_cast<int>(samples.size()) != N)
    throw std::invalid_argument("forward_transform: sample count must equal num_modes");
  const int M = grid.half_modes();
  SpectralField f(grid);
  const double w0 = -2.0 * std::numbers::pi / N;
  for (int n = -M + 1; n < M; ++n) {
    cplx acc{};
    for (int j = 0; j < N; ++j) acc += samples[j] * std::polar(1.0, w0 * n * j);
    f.coeff(n) = acc / static_cast<double>(N);
  }
  // Nyquist bin: e^{iMx_j} = e^{-iMx_j} = (-1)^j on this grid, split it evenly.
  cplx nyq{};
  for (int j = 0; j < N; ++j) nyq += samples[j] * std::polar(1.0, w0 * M * j);
  nyq /= static_cast<double>(N);
  f.coeff(M) = 0.5 * nyq;
  f.coeff(-M) = 0.5 * nyq;
  return f;
}

std::vector<cplx> inverse_transform(const SpectralField& f) {
  const int N = f.grid().num_modes;
  const int M = f.half_modes();
  std::vector<cplx> samples(N);
  const double w0 = 2.0 * std::numbers::pi / N;
  for (int j = 0; j < N; ++j) {
    cplx acc{};
    for (int n = -M; n <= M; ++n) acc += f.coeff(n) * std::polar(1.0, w0 * n * j);
    samples[j] = acc;
  }
  return samples;
}

double sobolev_norm(const SpectralField& f, double s) {
  double sum = 0.0;
  for (int n = -f.half_modes(); n <= f.half_modes(); ++n) {
    const double w = std::pow(bracket(n), 2.0 * s);
    sum += w * std::norm(f.coeff(n));
  }
  return std::sqrt(sum);
}

}  // namespace bsq
