#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "efln/dsp.hpp"

namespace efln::scenarios {

/// i.i.d. uniform samples over [lo, hi).
std::vector<double> gen_uniform(dsp::SeededRng& rng, double lo, double hi, std::size_t count);

/// i.i.d. standard-normal-based samples with the given stddev.
std::vector<double> gen_gaussian(dsp::SeededRng& rng, double stddev, std::size_t count);

/// Zero-mean Gaussian noise sized against the signal power:
/// var = P_signal / 10^(snr_db/10).
std::vector<double> gen_awgn_for_snr(std::span<const double> signal, double snr_db,
                                     dsp::SeededRng& rng);

double signal_power(std::span<const double> signal);

/// Logistic chaotic sequence u(n+1) = 4 u(n)(1 - u(n)), u(0) = 0.9,
/// normalized to unit mean-square power.
std::vector<double> gen_logistic(std::size_t count);

/// Nonlinear system-identification plant:
/// ybar(n) = 0.6 sin^3(pi u(n)) - 2/(u^3(n)+2) - 0.1 cos(4 pi u(n-4)) + 1.125.
std::vector<double> nsi_plant(std::span<const double> u);

/// Loudspeaker pre-distortion argument gamma(n) = 1.5 u(n) - 0.3 u^2(n).
std::vector<double> loudspeaker_gamma(std::span<const double> u);

/// Asymmetric sigmoidal distortion phi = 2/(1+e^{-a g}) - 1 with slope
/// a = 4 for g > 0 and a = 0.5 for g < 0 (output is 0 at g = 0 either way).
std::vector<double> sigmoid_distortion(std::span<const double> gamma);

/// Polynomial primary-path nonlinearity at the cancellation point:
/// d(n) = uh(n-2) + 0.8 uh^2(n-2) - 0.4 uh^3(n-2) + uh^4(n-1) uh(n-2).
std::vector<double> nanc_poly_primary(std::span<const double> u_hat);

/// Saturating secondary-path distortion 3.3 tanh(0.3 x).
std::vector<double> tanh_secondary(std::span<const double> x);

struct PathFixture {
  std::vector<double> primary;
  std::vector<double> secondary;
};

/// Published path polynomials: "engine" (degree-15 primary, degree-12
/// secondary) and "chaotic" (short nonminimum-phase pair). Individual taps
/// are also reachable as "engine_P", "engine_S", "chaotic_P", "chaotic_S"
/// through the .primary/.secondary members.
PathFixture path_fixtures(const std::string& name);

/// Matched EFLN plant: ybar(n) = gbar^T(n) wbar with the expansion taken
/// at the fixed ideal factor qbar over the tapped input window.
std::vector<double> ident_efln_plant(std::span<const double> u, std::span<const double> wbar,
                                     double qbar, int m, int p);

/// Desk-scale stand-in for the long identified impulse response: seeded
/// random taps under an exponentially decaying envelope, one envelope per
/// channel, concatenated channel-major (length M(2P+1)).
std::vector<double> ident_fixture_weights(dsp::SeededRng& rng, int m, int p);

/// Synthetic engine-noise stand-in: white noise shaped by a resonant
/// two-pole bandpass, normalized to unit power.
std::vector<double> gen_engine_standin(dsp::SeededRng& rng, std::size_t count);

/// Synthetic speech stand-in: AR(2)-colored noise with slow random
/// amplitude bursts, clipped to (-1, 1).
std::vector<double> gen_speech_standin(dsp::SeededRng& rng, std::size_t count);

/// Synthetic room impulse response: decaying random taps, unit-norm.
std::vector<double> gen_room_response(dsp::SeededRng& rng, std::size_t taps);

/// One value per line, optional non-numeric header line.
std::vector<double> read_signal_csv(const std::string& path);

}  // namespace efln::scenarios
