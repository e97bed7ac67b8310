#pragma once

#include <span>
#include <vector>

namespace efln::metrics {

constexpr double kMseFloorDb = -400.0;
constexpr double kErleCapDb = 400.0;

/// 10 log10(mean square) over the window; -400 dB floor for all-zero input.
double mse_db(std::span<const double> errors);

/// 10 log10(||d||^2 / ||e||^2); +400 dB cap when e has zero power.
double erle_db(std::span<const double> d, std::span<const double> e);

/// Centered-causal moving average with the given window (>= 1).
std::vector<double> moving_average(std::span<const double> values, int window);

}  // namespace efln::metrics
