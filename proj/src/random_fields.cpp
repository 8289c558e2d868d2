#include "bsq/random_fields.hpp"

#include <cmath>

namespace bsq {

SpectralField random_real_data(const GridSpec& grid, int n_max, double amplitude, double decay,
                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SpectralField f(grid);
  const int top = std::min(n_max, grid.half_modes());
  for (int n = 0; n <= top; ++n) {
    const double scale = amplitude * std::pow(bracket(n), -decay);
    const cplx c = n == 0 ? cplx(scale * unit(rng), 0.0)
                          : scale * cplx(unit(rng), unit(rng));
    f.coeff(n) = c;
    f.coeff(-n) = std::conj(c);
  }
  return f;
}

SpaceTimeField random_spacetime_field(const GridSpec& grid, int n_max, double mode_decay,
                                      double sigma_decay, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  SpaceTimeField F(grid);
  const int top = std::min(n_max, grid.half_modes());
  for (int n = -top; n <= top; ++n) {
    auto& col = F.ensure_col(n);
    const double wn = std::pow(bracket(n), -mode_decay);
    for (int j = 0; j < grid.tau_points; ++j) {
      const double sigma = std::abs(grid.tau_node(j)) - static_cast<double>(n) * n;
      const double amp = wn * std::pow(bracket(sigma), -sigma_decay);
      col[j] = amp * cplx(unit(rng), unit(rng));
    }
  }
  return F;
}

}  // namespace bsq
