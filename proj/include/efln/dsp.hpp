#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "efln/fft.hpp"

namespace efln::dsp {

/// Overlap-save fast convolution: last M elements of
/// IFFT(FFT([prev; cur]) o coeff_spectrum). Valid linear convolution for
/// coefficient lengths <= M+1 before zero padding.
std::vector<double> overlap_save_filter(std::span<const double> prev,
                                        std::span<const double> cur,
                                        const Spectrum& coeff_spectrum);

/// Overlap-save correlation: first M elements of
/// IFFT(error_spectrum o conj(input_spectrum)), with error_spectrum the
/// transform of [0_M; e(k)]. Yields the gradient G_i(k) e(k).
std::vector<double> overlap_save_correlate(const Spectrum& error_spectrum,
                                           const Spectrum& input_spectrum);

/// Causal direct-form FIR, zero initial state. Ground truth for the
/// overlap-save paths.
std::vector<double> fir_filter_direct(std::span<const double> signal,
                                      std::span<const double> taps);

/// Transform of a tap vector zero-padded to 2M points.
Spectrum zero_padded_spectrum(std::span<const double> taps, int m);

/// Deterministic random source; identical seeds reproduce identical streams.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double gaussian(double mean, double stddev) {
    // Explicit Box-Muller: std::normal_distribution output is
    // implementation-defined, which would break cross-toolchain determinism.
    if (have_spare_) {
      have_spare_ = false;
      return mean + stddev * spare_;
    }
    double u1 = std::uniform_real_distribution<double>(1e-300, 1.0)(gen_);
    double u2 = std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(6.283185307179586477 * u2);
    have_spare_ = true;
    return mean + stddev * r * std::cos(6.283185307179586477 * u2);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace efln::dsp
