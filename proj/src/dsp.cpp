#include "efln/dsp.hpp"

#include <stdexcept>

#include "efln/kernels.hpp"

namespace efln::dsp {

std::vector<double> overlap_save_filter(std::span<const double> prev,
                                        std::span<const double> cur,
                                        const Spectrum& coeff_spectrum) {
  const std::size_t m = cur.size();
  if (prev.size() != m) throw std::invalid_argument("overlap_save_filter: block size mismatch");
  if (coeff_spectrum.size() != 2 * m)
    throw std::invalid_argument("overlap_save_filter: spectrum size mismatch");
  std::vector<double> buf(2 * m);
  std::copy(prev.begin(), prev.end(), buf.begin());
  std::copy(cur.begin(), cur.end(), buf.begin() + m);
  Spectrum spec = forward_transform(buf);
  kernels::cmul(spec.data(), coeff_spectrum.data(), spec.data(), spec.size());
  std::vector<double> full = inverse_transform(spec);
  return {full.begin() + m, full.end()};
}

std::vector<double> overlap_save_correlate(const Spectrum& error_spectrum,
                                           const Spectrum& input_spectrum) {
  if (error_spectrum.size() != input_spectrum.size() || error_spectrum.empty() ||
      error_spectrum.size() % 2 != 0)
    throw std::invalid_argument("overlap_save_correlate: spectrum size mismatch");
  const std::size_t m = error_spectrum.size() / 2;
  Spectrum prod(error_spectrum.size());
  kernels::cmul_conj(error_spectrum.data(), input_spectrum.data(), prod.data(), prod.size());
  std::vector<double> full = inverse_transform(prod);
  return {full.begin(), full.begin() + m};
}

std::vector<double> fir_filter_direct(std::span<const double> signal,
                                      std::span<const double> taps) {
  if (taps.empty()) throw std::invalid_argument("fir_filter_direct: empty taps");
  std::vector<double> out(signal.size(), 0.0);
  for (std::size_t n = 0; n < signal.size(); ++n) {
    double acc = 0.0;
    const std::size_t lmax = std::min(taps.size(), n + 1);
    for (std::size_t l = 0; l < lmax; ++l) acc += taps[l] * signal[n - l];
    out[n] = acc;
  }
  return out;
}

Spectrum zero_padded_spectrum(std::span<const double> taps, int m) {
  if (m < 1 || taps.size() > std::size_t(2 * m))
    throw std::invalid_argument("zero_padded_spectrum: bad sizes");
  std::vector<double> padded(2 * m, 0.0);
  std::copy(taps.begin(), taps.end(), padded.begin());
  return forward_transform(padded);
}

}  // namespace efln::dsp
