#include "efln/fdefln.hpp"

#include <cmath>
#include <stdexcept>

#include "efln/errors.hpp"
#include "efln/kernels.hpp"

namespace efln::fd {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

long long fft_model_cost(int m) {
  // 2M-point transform: 2M log2(2M) real multiplications (= additions).
  int log2n = 0;
  for (int v = 2 * m; v > 1; v >>= 1) ++log2n;
  return 2LL * m * log2n;
}

}  // namespace

FdeflnState fdefln_init(int m, int p, double mu_w, double mu_q, double q0) {
  if (m < 1 || p < 1) throw std::invalid_argument("fdefln_init: M and P must be >= 1");
  if (mu_w < 0.0 || mu_q < 0.0) throw std::invalid_argument("fdefln_init: negative step size");
  FdeflnState s;
  s.m = m;
  s.p = p;
  s.q = q0;
  s.mu_w = mu_w;
  s.mu_q = mu_q;
  s.w_spec.assign(2 * p + 1, dsp::Spectrum(2 * m, {0.0, 0.0}));
  s.prev_g.assign(2 * p + 1, std::vector<double>(m, 0.0));
  s.prev_h.assign(2 * p + 1, std::vector<double>(m, 0.0));
  return s;
}

std::pair<std::vector<double>, std::vector<double>> fdefln_block(
    FdeflnState& state, std::span<const double> u_blk, std::span<const double> d_blk) {
  const int m = state.m;
  const int c = 2 * state.p + 1;
  if (int(u_blk.size()) != m || int(d_blk.size()) != m)
    throw std::invalid_argument("fdefln_block: block size mismatch");

  OpCounter* ct = (state.counter && is_pow2(2 * m)) ? state.counter : nullptr;
  const long long fftc = ct ? fft_model_cost(m) : 0;

  auto g_cur = expansion::efln_expand(u_blk, state.q, state.p);

  // Filtering: per channel FFT of the two-block history, spectral product
  // with the weight spectrum, inverse transform, keep the last M samples.
  std::vector<dsp::Spectrum> g_spec(c);
  std::vector<double> y(m, 0.0);
  std::vector<double> buf(2 * m);
  dsp::Spectrum prod(2 * m);
  for (int i = 0; i < c; ++i) {
    std::copy(state.prev_g[i].begin(), state.prev_g[i].end(), buf.begin());
    std::copy(g_cur[i].begin(), g_cur[i].end(), buf.begin() + m);
    g_spec[i] = dsp::forward_transform(buf);
    kernels::cmul(g_spec[i].data(), state.w_spec[i].data(), prod.data(), 2 * m);
    auto yi = dsp::inverse_transform(prod);
    kernels::vadd(yi.data() + m, y.data(), m);
    if (ct) {
      ct->filtering.mults += 2 * fftc + 8LL * m;
      ct->filtering.adds += 2 * fftc + 4LL * m;
    }
  }
  if (ct) ct->filtering.adds += 2LL * m * state.p;

  std::vector<double> e(m);
  for (int j = 0; j < m; ++j) {
    e[j] = d_blk[j] - y[j];
    if (!std::isfinite(e[j]) || std::abs(e[j]) > kDivergenceLimit)
      throw DivergenceError(state.block, "fdefln_block error sample");
  }
  std::fill(buf.begin(), buf.begin() + m, 0.0);
  std::copy(e.begin(), e.end(), buf.begin() + m);
  dsp::Spectrum e_spec = dsp::forward_transform(buf);
  if (ct) {
    ct->error.mults += fftc;
    ct->error.adds += fftc + m;
  }

  // Factor gradient with the pre-update weight spectra.
  auto h_cur = expansion::efln_derivative(u_blk, state.q, state.p);
  std::vector<double> z(m, 0.0);
  for (int i = 0; i < c; ++i) {
    std::copy(state.prev_h[i].begin(), state.prev_h[i].end(), buf.begin());
    std::copy(h_cur[i].begin(), h_cur[i].end(), buf.begin() + m);
    dsp::Spectrum h_spec = dsp::forward_transform(buf);
    kernels::cmul(h_spec.data(), state.w_spec[i].data(), prod.data(), 2 * m);
    auto zi = dsp::inverse_transform(prod);
    kernels::vadd(zi.data() + m, z.data(), m);
    if (ct) {
      ct->factor.mults += 2 * fftc + 8LL * m;
      ct->factor.adds += 2 * fftc + 4LL * m;
    }
  }
  if (ct) ct->factor.adds += 2LL * m * state.p;

  if (state.probe) {
    BlockProbe& pr = *state.probe;
    pr.sum_col_norm2 = 0.0;
    pr.col_sum_norm2 = 0.0;
    std::vector<double> hist(2 * m);
    for (int i = 0; i < c; ++i) {
      std::copy(state.prev_g[i].begin(), state.prev_g[i].end(), hist.begin());
      std::copy(g_cur[i].begin(), g_cur[i].end(), hist.begin() + m);
      // hist[t], t=1..2m-1, appears in m-|t-m| of the M tapped columns.
      for (int t = 1; t < 2 * m; ++t)
        pr.sum_col_norm2 += double(m - std::abs(t - m)) * hist[t] * hist[t];
      for (int l = 1; l <= m; ++l) {
        double s = 0.0;
        for (int j = 1; j <= m; ++j) s += hist[m + j - l];
        pr.col_sum_norm2 += s * s;
      }
    }
    pr.z = z;
  }

  // Weight adaptation: overlap-save correlation, gradient constraint by
  // zero padding, spectral update.
  for (int i = 0; i < c; ++i) {
    kernels::cmul_conj(e_spec.data(), g_spec[i].data(), prod.data(), 2 * m);
    auto phi = dsp::inverse_transform(prod);
    std::copy(phi.begin(), phi.begin() + m, buf.begin());
    std::fill(buf.begin() + m, buf.end(), 0.0);
    dsp::Spectrum upd = dsp::forward_transform(buf);
    kernels::axpy(state.mu_w, upd.data(), state.w_spec[i].data(), 2 * m);
    if (ct) {
      ct->weight.mults += 2 * fftc + 10LL * m;
      ct->weight.adds += 2 * fftc + 8LL * m;
    }
  }

  state.q += state.mu_q * kernels::dot(z.data(), e.data(), m);
  if (ct) {
    ct->factor.mults += m + 1;
    ct->factor.adds += m;
  }

  state.prev_g = std::move(g_cur);
  state.prev_h = std::move(h_cur);
  ++state.block;
  return {std::move(y), std::move(e)};
}

std::vector<double> fdefln_weights_time(const FdeflnState& state) {
  const int m = state.m;
  std::vector<double> w;
  w.reserve(std::size_t(m) * state.w_spec.size());
  for (const auto& spec : state.w_spec) {
    auto t = dsp::inverse_transform(spec);
    double head = 0.0, tail = 0.0;
    for (int j = 0; j < m; ++j) head += t[j] * t[j];
    for (int j = m; j < 2 * m; ++j) tail += t[j] * t[j];
    if (tail > 1e-18 * (head + tail) && head + tail > 0.0)
      throw std::runtime_error("fdefln_weights_time: weight spectrum tail constraint violated");
    w.insert(w.end(), t.begin(), t.begin() + m);
  }
  return w;
}

}  // namespace efln::fd
