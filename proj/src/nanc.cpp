#include "efln/nanc.hpp"

#include <cmath>
#include <stdexcept>

#include "efln/dsp.hpp"
#include "efln/errors.hpp"
#include "efln/kernels.hpp"

namespace efln::nanc {

SecondaryPath SecondaryPath::make(std::vector<double> taps, int m, Nl nl, double nl_gain,
                                  double nl_slope) {
  if (taps.empty() || int(taps.size()) > m)
    throw std::invalid_argument("SecondaryPath: need 1 <= N <= M");
  SecondaryPath p;
  p.m = m;
  p.nl = nl;
  p.nl_gain = nl_gain;
  p.nl_slope = nl_slope;
  p.taps = std::move(taps);
  p.spec = dsp::zero_padded_spectrum(p.taps, m);
  return p;
}

void SecondaryPath::set_taps(std::vector<double> new_taps) {
  if (new_taps.empty() || int(new_taps.size()) > m)
    throw std::invalid_argument("SecondaryPath::set_taps: need 1 <= N <= M");
  taps = std::move(new_taps);
  spec = dsp::zero_padded_spectrum(taps, m);
}

double SecondaryPath::apply_nl(double x) const {
  return nl == Nl::Tanh ? nl_gain * std::tanh(nl_slope * x) : x;
}

namespace {

FdefslmsState make_state(int m, const expansion::ExpansionConfig& cfg, double mu_w, double mu_q,
                         double q0) {
  if (m < 1) throw std::invalid_argument("fdefslms_init: M must be >= 1");
  if (cfg.kind != expansion::Kind::Linear && cfg.order < 1)
    throw std::invalid_argument("fdefslms_init: order must be >= 1");
  if (mu_w < 0.0 || mu_q < 0.0) throw std::invalid_argument("fdefslms_init: negative step size");
  FdefslmsState s;
  s.m = m;
  s.cfg = cfg;
  s.q = q0;
  s.mu_w = mu_w;
  s.mu_q = mu_q;
  const int c = cfg.channels();
  s.w_spec.assign(c, dsp::Spectrum(2 * m, {0.0, 0.0}));
  s.prev_g.assign(c, std::vector<double>(m, 0.0));
  s.prev_h.assign(c, std::vector<double>(m, 0.0));
  s.prev_ghat.assign(c, std::vector<double>(m, 0.0));
  s.prev_hhat.assign(c, std::vector<double>(m, 0.0));
  s.prev_y.assign(m, 0.0);
  return s;
}

std::vector<double> filtered_block(FdefslmsState& state, const SecondaryPath& path,
                                   std::span<const double> u_blk,
                                   std::span<const double> d_blk) {
  const int m = state.m;
  const int c = state.cfg.channels();
  if (int(u_blk.size()) != m || int(d_blk.size()) != m)
    throw std::invalid_argument("fdefslms_block: block size mismatch");
  if (int(path.taps.size()) > m)
    throw std::invalid_argument("fdefslms_block: path longer than block");

  const bool efln = state.cfg.kind == expansion::Kind::Efln;
  auto g_cur = efln ? expansion::efln_expand(u_blk, state.q, state.cfg.order)
                    : expansion::expand_baseline(u_blk, state.cfg);

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
  }

  // Residual from the plant: y through the secondary path (overlap-save on
  // the two-block output history), then the optional distortion.
  auto y_hat = dsp::overlap_save_filter(state.prev_y, y, path.spec);
  std::vector<double> e(m);
  for (int j = 0; j < m; ++j) {
    e[j] = d_blk[j] - path.apply_nl(y_hat[j]);
    if (!std::isfinite(e[j]) || std::abs(e[j]) > kDivergenceLimit)
      throw DivergenceError(state.block, "fdefslms_block error sample");
  }
  std::fill(buf.begin(), buf.begin() + m, 0.0);
  std::copy(e.begin(), e.end(), buf.begin() + m);
  dsp::Spectrum e_spec = dsp::forward_transform(buf);

  // Factor gradient (EFLN only) with the pre-update weight spectra.
  expansion::Channels h_cur, hhat_cur;
  if (efln) {
    h_cur = expansion::efln_derivative(u_blk, state.q, state.cfg.order);
    hhat_cur.assign(c, {});
    std::vector<double> z(m, 0.0);
    for (int i = 0; i < c; ++i) {
      std::copy(state.prev_h[i].begin(), state.prev_h[i].end(), buf.begin());
      std::copy(h_cur[i].begin(), h_cur[i].end(), buf.begin() + m);
      dsp::Spectrum h_spec = dsp::forward_transform(buf);
      kernels::cmul(h_spec.data(), path.spec.data(), prod.data(), 2 * m);
      auto ht = dsp::inverse_transform(prod);
      hhat_cur[i].assign(ht.begin() + m, ht.end());
      std::copy(state.prev_hhat[i].begin(), state.prev_hhat[i].end(), buf.begin());
      std::copy(hhat_cur[i].begin(), hhat_cur[i].end(), buf.begin() + m);
      dsp::Spectrum hhat_spec = dsp::forward_transform(buf);
      kernels::cmul(hhat_spec.data(), state.w_spec[i].data(), prod.data(), 2 * m);
      auto zi = dsp::inverse_transform(prod);
      kernels::vadd(zi.data() + m, z.data(), m);
    }
    state.q += state.mu_q * kernels::dot(z.data(), e.data(), m);
  }

  // Weight adaptation through the filtered expanded channels.
  expansion::Channels ghat_cur(c);
  for (int i = 0; i < c; ++i) {
    kernels::cmul(g_spec[i].data(), path.spec.data(), prod.data(), 2 * m);
    auto gt = dsp::inverse_transform(prod);
    ghat_cur[i].assign(gt.begin() + m, gt.end());
    std::copy(state.prev_ghat[i].begin(), state.prev_ghat[i].end(), buf.begin());
    std::copy(ghat_cur[i].begin(), ghat_cur[i].end(), buf.begin() + m);
    dsp::Spectrum ghat_spec = dsp::forward_transform(buf);
    kernels::cmul_conj(e_spec.data(), ghat_spec.data(), prod.data(), 2 * m);
    auto phi = dsp::inverse_transform(prod);
    std::copy(phi.begin(), phi.begin() + m, buf.begin());
    std::fill(buf.begin() + m, buf.end(), 0.0);
    dsp::Spectrum upd = dsp::forward_transform(buf);
    kernels::axpy(state.mu_w, upd.data(), state.w_spec[i].data(), 2 * m);
  }

  state.prev_g = std::move(g_cur);
  state.prev_ghat = std::move(ghat_cur);
  if (efln) {
    state.prev_h = std::move(h_cur);
    state.prev_hhat = std::move(hhat_cur);
  }
  state.prev_y = y;
  ++state.block;
  return e;
}

}  // namespace

FdefslmsState fdefslms_init(int m, int p, double mu_w, double mu_q, double q0) {
  return make_state(m, {p, expansion::Kind::Efln}, mu_w, mu_q, q0);
}

FdefslmsState fd_baseline_init(int m, const expansion::ExpansionConfig& cfg, double mu_w,
                               double q0) {
  if (cfg.kind == expansion::Kind::Efln)
    throw std::invalid_argument("fd_baseline_init: use fdefslms_init for EFLN");
  return make_state(m, cfg, mu_w, 0.0, q0);
}

std::vector<double> fdefslms_block(FdefslmsState& state, const SecondaryPath& path,
                                   std::span<const double> u_blk,
                                   std::span<const double> d_blk) {
  if (state.cfg.kind != expansion::Kind::Efln)
    throw std::invalid_argument("fdefslms_block: state holds a baseline expansion");
  return filtered_block(state, path, u_blk, d_blk);
}

std::vector<double> filtered_baseline_block(FdefslmsState& state, const SecondaryPath& path,
                                            std::span<const double> u_blk,
                                            std::span<const double> d_blk) {
  if (state.cfg.kind == expansion::Kind::Efln)
    throw std::invalid_argument("filtered_baseline_block: state holds an EFLN expansion");
  return filtered_block(state, path, u_blk, d_blk);
}

EfslmsState efslms_init(int m, int p, double mu_w, double mu_q, double q0, int path_len) {
  if (m < 1 || p < 1) throw std::invalid_argument("efslms_init: M and P must be >= 1");
  if (path_len < 1 || path_len > m) throw std::invalid_argument("efslms_init: need 1 <= N <= M");
  EfslmsState s;
  s.m = m;
  s.p = p;
  s.q = q0;
  s.mu_w = mu_w;
  s.mu_q = mu_q;
  s.w.assign(std::size_t(m) * (2 * p + 1), 0.0);
  s.u_hist.assign(m + path_len - 1, 0.0);
  s.y_hist.assign(path_len, 0.0);
  return s;
}

double efslms_step(EfslmsState& state, const SecondaryPath& path, double u_n, double d_n) {
  const int m = state.m;
  const int c = 2 * state.p + 1;
  const int n_taps = int(path.taps.size());
  if (int(state.y_hist.size()) != n_taps)
    throw std::invalid_argument("efslms_step: path length changed under state");

  for (std::size_t j = state.u_hist.size() - 1; j > 0; --j) state.u_hist[j] = state.u_hist[j - 1];
  state.u_hist[0] = u_n;

  // Whole window re-expanded at the current q, channels newest-first.
  auto g = expansion::efln_expand(state.u_hist, state.q, state.p);
  auto h = expansion::efln_derivative(state.u_hist, state.q, state.p);

  double y = 0.0;
  for (int i = 0; i < c; ++i)
    y += kernels::dot(g[i].data(), state.w.data() + std::size_t(i) * m, m);

  for (int j = n_taps - 1; j > 0; --j) state.y_hist[j] = state.y_hist[j - 1];
  state.y_hist[0] = y;
  double y_hat = 0.0;
  for (int v = 0; v < n_taps; ++v) y_hat += path.taps[v] * state.y_hist[v];

  const double e = d_n - path.apply_nl(y_hat);
  if (!std::isfinite(e) || std::abs(e) > kDivergenceLimit)
    throw DivergenceError(state.sample / m, "efslms_step error sample");

  // Filtered channels g_hat[l] = sum_v s[v] g(n-l-v), and the q gradient
  // from the pre-update weights.
  double hw = 0.0;
  std::vector<double> ghat(m);
  for (int i = 0; i < c; ++i) {
    double* wi = state.w.data() + std::size_t(i) * m;
    double hw_i = 0.0;
    for (int l = 0; l < m; ++l) {
      double gacc = 0.0, hacc = 0.0;
      for (int v = 0; v < n_taps; ++v) {
        gacc += path.taps[v] * g[i][l + v];
        hacc += path.taps[v] * h[i][l + v];
      }
      ghat[l] = gacc;
      hw_i += hacc * wi[l];
    }
    hw += hw_i;
    for (int l = 0; l < m; ++l) wi[l] += state.mu_w * e * ghat[l];
  }
  state.q += state.mu_q * e * hw;
  ++state.sample;
  return e;
}

}  // namespace efln::nanc
