#pragma once

#include <complex>
#include <vector>

#include "bsq/util.hpp"

namespace bsq {

using cplx = std::complex<double>;

// Boussinesq dispersion symbol gamma(n) = sqrt(n^2 + n^4).
// Even in n, gamma(0) = 0 and n^2 <= gamma(n) <= n^2 + 1/2.
double dispersion(long long n);

// Discrete Fourier lattice: spatial modes n in {-M..M} with M = num_modes/2,
// a uniform time grid of step t_step on [0, t_final], and a uniform symmetric
// tau grid of tau_points nodes on [-tau_max, tau_max].
struct GridSpec {
  int num_modes = 0;   // even; x-sample count, modes run over {-M..M}
  int tau_points = 0;
  double tau_max = 0.0;
  double t_step = 0.0;
  double t_final = 0.0;

  GridSpec() = default;
  GridSpec(int num_modes_, int tau_points_, double tau_max_, double t_step_, double t_final_);

  int half_modes() const { return num_modes / 2; }   // M
  int mode_count() const { return num_modes + 1; }   // |{-M..M}|
  int mode_index(int n) const { return n + half_modes(); }

  double tau_spacing() const { return 2.0 * tau_max / (tau_points - 1); }
  double tau_node(int j) const { return -tau_max + j * tau_spacing(); }

  bool operator==(const GridSpec&) const = default;
};

// Complex Fourier coefficients of one spatial function, indexed by mode n.
// Normalization: the constant function c has coeff(0) = c and nothing else.
class SpectralField {
public:
  SpectralField() = default;
  explicit SpectralField(const GridSpec& grid) : grid_(grid), coeffs_(grid.mode_count(), cplx{}) {}

  const GridSpec& grid() const { return grid_; }
  int half_modes() const { return grid_.half_modes(); }

  cplx coeff(int n) const { return coeffs_[grid_.mode_index(n)]; }
  cplx& coeff(int n) { return coeffs_[grid_.mode_index(n)]; }
  const std::vector<cplx>& raw() const { return coeffs_; }
  std::vector<cplx>& raw() { return coeffs_; }

  // Largest |coeff(-n) - conj(coeff(n))| relative to the sup coefficient.
  double hermitian_defect() const;
  bool is_real_valued(double rel_tol = 1e-12) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(double scale);

private:
  GridSpec grid_;
  std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator*(double scale, SpectralField f);

// Samples on the uniform x-grid x_j = 2*pi*j/num_modes -> Fourier coefficients.
// The aliased Nyquist bin is split evenly between modes +M and -M, so the
// inverse transform reproduces the samples exactly.
SpectralField forward_transform(const GridSpec& grid, std::span<const cplx> samples);

// Evaluates the trigonometric polynomial on the uniform x-grid.
std::vector<cplx> inverse_transform(const SpectralField& f);

// H^s norm: ( sum_n <n>^{2s} |f^(n)|^2 )^{1/2} with <n> = 1 + |n|.
double sobolev_norm(const SpectralField& f, double s);

}  // namespace bsq
