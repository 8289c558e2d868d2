#pragma once

#include <random>

#include "bsq/xsb.hpp"

namespace bsq {

// Real-valued random trig polynomial: Hermitian coefficients on |n| <= n_max
// with |c(n)| ~ amplitude * <n>^{-decay}.
SpectralField random_real_data(const GridSpec& grid, int n_max, double amplitude, double decay,
                               std::mt19937_64& rng);

// Random space-time field concentrated near the parabolas |tau| = n^2:
// coefficients ~ <n>^{-mode_decay} <|tau| - n^2>^{-sigma_decay} with random
// phases, on |n| <= n_max.
SpaceTimeField random_spacetime_field(const GridSpec& grid, int n_max, double mode_decay,
                                      double sigma_decay, std::mt19937_64& rng);

}  // namespace bsq
