#pragma once

#include <complex>
#include <span>
#include <vector>

namespace efln::dsp {

using cplx = std::complex<double>;

/// Length-2M complex spectrum of a two-block buffer.
using Spectrum = std::vector<cplx>;

/// In-place complex DFT of arbitrary size. Radix-2 for powers of two,
/// Bluestein otherwise. `inverse` applies the conjugate transform and the
/// 1/n normalization.
void fft_inplace(std::vector<cplx>& data, bool inverse);

/// Unnormalized DFT of a real two-block buffer (any even or odd length).
/// Convention: forward unnormalized, inverse carries 1/n, so
/// ||forward(x)||^2 = n * ||x||^2 (Parseval with factor n = 2M).
Spectrum forward_transform(std::span<const double> block2m);

/// Inverse of forward_transform for Hermitian-symmetric spectra.
/// Imaginary residue below 1e-9 absolute is discarded; anything larger
/// signals a symmetry bug and throws.
std::vector<double> inverse_transform(const Spectrum& spectrum);

}  // namespace efln::dsp
