#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bsq {

// <a> = 1 + |a|, the bracket used in every weight.
inline double bracket(double a) { return 1.0 + std::abs(a); }

// Discrete lattice/grid cannot represent the requested object.
class ResolutionError : public std::runtime_error {
public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// Ratio of two norms where the denominator vanished.
class UndefinedRatioError : public std::runtime_error {
public:
  explicit UndefinedRatioError(const std::string& what) : std::runtime_error(what) {}
};

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

// Runs fn(i) for i in [0, count) on up to `workers` threads.
// Results must be written to disjoint slots; iteration order is unspecified.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

// FNV-1a, used to stamp output files with their config.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace bsq
