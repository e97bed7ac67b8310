#include "efln/fft.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace efln::dsp {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Twiddle tables per transform size, shared across calls.
const std::vector<cplx>& twiddles(std::size_t n) {
  static std::mutex mtx;
  static std::map<std::size_t, std::vector<cplx>> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> tw(n / 2);
  for (std::size_t j = 0; j < n / 2; ++j) {
    double ang = -2.0 * std::numbers::pi * double(j) / double(n);
    tw[j] = {std::cos(ang), std::sin(ang)};
  }
  return cache.emplace(n, std::move(tw)).first->second;
}

// Iterative radix-2 Cooley-Tukey, forward sign convention e^{-i2pi/n}.
void radix2(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const auto& tw = twiddles(n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t step = n / len;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        cplx w = tw[j * step];
        if (inverse) w = std::conj(w);
        cplx u = a[i + j];
        cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

// Bluestein chirp tables per size.
struct ChirpPlan {
  std::vector<cplx> chirp;    // e^{-i pi k^2 / n}
  std::vector<cplx> kernel_f; // FFT of zero-padded conj chirp, length m
  std::size_t m = 0;
};

const ChirpPlan& chirp_plan(std::size_t n) {
  static std::mutex mtx;
  static std::map<std::size_t, ChirpPlan> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  ChirpPlan plan;
  plan.chirp.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the argument small for large sizes
    std::size_t k2 = (k * k) % (2 * n);
    double ang = -std::numbers::pi * double(k2) / double(n);
    plan.chirp[k] = {std::cos(ang), std::sin(ang)};
  }
  plan.m = next_pow2(2 * n - 1);
  plan.kernel_f.assign(plan.m, cplx{0.0, 0.0});
  plan.kernel_f[0] = std::conj(plan.chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    plan.kernel_f[k] = std::conj(plan.chirp[k]);
    plan.kernel_f[plan.m - k] = std::conj(plan.chirp[k]);
  }
  radix2(plan.kernel_f, false);
  return cache.emplace(n, std::move(plan)).first->second;
}

void bluestein(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  const ChirpPlan& plan = chirp_plan(n);
  std::vector<cplx> b(plan.m, cplx{0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) {
    cplx x = inverse ? std::conj(a[k]) : a[k];
    b[k] = x * plan.chirp[k];
  }
  radix2(b, false);
  for (std::size_t k = 0; k < plan.m; ++k) b[k] *= plan.kernel_f[k];
  radix2(b, true);
  const double inv_m = 1.0 / double(plan.m);
  for (std::size_t k = 0; k < n; ++k) {
    cplx x = b[k] * inv_m * plan.chirp[k];
    a[k] = inverse ? std::conj(x) : x;
  }
}

}  // namespace

void fft_inplace(std::vector<cplx>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 0) throw std::invalid_argument("fft_inplace: empty input");
  if (is_pow2(n)) {
    radix2(data, inverse);
  } else {
    bluestein(data, inverse);
  }
  if (inverse) {
    const double inv_n = 1.0 / double(n);
    for (auto& v : data) v *= inv_n;
  }
}

Spectrum forward_transform(std::span<const double> block2m) {
  if (block2m.empty()) throw std::invalid_argument("forward_transform: empty input");
  Spectrum spec(block2m.size());
  for (std::size_t j = 0; j < block2m.size(); ++j) spec[j] = {block2m[j], 0.0};
  fft_inplace(spec, false);
  return spec;
}

std::vector<double> inverse_transform(const Spectrum& spectrum) {
  if (spectrum.empty()) throw std::invalid_argument("inverse_transform: empty input");
  std::vector<cplx> work(spectrum);
  fft_inplace(work, true);
  // The residue tolerance scales with the spectrum magnitude so that
  // diverging (but still Hermitian) spectra surface as divergence, not as
  // a symmetry bug.
  double scale = 1.0;
  for (const auto& v : spectrum)
    scale = std::max(scale, std::abs(v) / static_cast<double>(spectrum.size()));
  std::vector<double> out(work.size());
  for (std::size_t j = 0; j < work.size(); ++j) {
    if (std::abs(work[j].imag()) > 1e-9 * scale)
      throw std::runtime_error("inverse_transform: non-Hermitian spectrum, imaginary residue " +
                               std::to_string(work[j].imag()));
    out[j] = work[j].real();
  }
  return out;
}

}  // namespace efln::dsp
