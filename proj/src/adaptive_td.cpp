#include "efln/adaptive_td.hpp"

#include <cmath>
#include <stdexcept>

#include "efln/errors.hpp"
#include "efln/kernels.hpp"

namespace efln::td {

TdState td_init(int m, int p, double mu_w, double mu_q, double q0) {
  if (m < 1 || p < 1) throw std::invalid_argument("td_init: M and P must be >= 1");
  if (mu_w < 0.0 || mu_q < 0.0) throw std::invalid_argument("td_init: negative step size");
  TdState s;
  s.m = m;
  s.p = p;
  s.q = q0;
  s.mu_w = mu_w;
  s.mu_q = mu_q;
  s.w.assign(std::size_t(m) * (2 * p + 1), 0.0);
  s.delay.assign(m, 0.0);
  s.prev_g.assign(2 * p + 1, std::vector<double>(m, 0.0));
  s.prev_h.assign(2 * p + 1, std::vector<double>(m, 0.0));
  return s;
}

std::pair<double, double> efln_lms_step(TdState& state, double u_n, double d_n) {
  const int m = state.m;
  const int c = 2 * state.p + 1;
  for (int j = m - 1; j > 0; --j) state.delay[j] = state.delay[j - 1];
  state.delay[0] = u_n;

  // delay is newest-first, so channel element l pairs with weight w_i[l].
  auto g = expansion::efln_expand(state.delay, state.q, state.p);
  auto h = expansion::efln_derivative(state.delay, state.q, state.p);

  double y = 0.0;
  double hw = 0.0;
  for (int i = 0; i < c; ++i) {
    const double* wi = state.w.data() + std::size_t(i) * m;
    y += kernels::dot(g[i].data(), wi, m);
    hw += kernels::dot(h[i].data(), wi, m);
  }
  const double e = d_n - y;
  if (!std::isfinite(e) || std::abs(e) > kDivergenceLimit)
    throw DivergenceError(state.sample / m, "efln_lms_step error sample");

  for (int i = 0; i < c; ++i) {
    double* wi = state.w.data() + std::size_t(i) * m;
    for (int l = 0; l < m; ++l) wi[l] += state.mu_w * e * g[i][l];
  }
  state.q += state.mu_q * e * hw;
  ++state.sample;
  return {y, e};
}

std::pair<std::vector<double>, std::vector<double>> block_td_step(
    TdState& state, std::span<const double> u_blk, std::span<const double> d_blk) {
  const int m = state.m;
  const int c = 2 * state.p + 1;
  if (int(u_blk.size()) != m || int(d_blk.size()) != m)
    throw std::invalid_argument("block_td_step: block size mismatch");

  auto g_cur = expansion::efln_expand(u_blk, state.q, state.p);
  auto h_cur = expansion::efln_derivative(u_blk, state.q, state.p);

  // Per-channel two-block history: samples kM-M+1 .. kM+M, time-ascending.
  // The previous half keeps the channels as expanded at the previous q.
  std::vector<std::vector<double>> g_hist(c, std::vector<double>(2 * m));
  std::vector<std::vector<double>> h_hist(c, std::vector<double>(2 * m));
  for (int i = 0; i < c; ++i) {
    std::copy(state.prev_g[i].begin(), state.prev_g[i].end(), g_hist[i].begin());
    std::copy(g_cur[i].begin(), g_cur[i].end(), g_hist[i].begin() + m);
    std::copy(state.prev_h[i].begin(), state.prev_h[i].end(), h_hist[i].begin());
    std::copy(h_cur[i].begin(), h_cur[i].end(), h_hist[i].begin() + m);
  }

  // y(kM+j) = sum_i sum_l g_i(kM+j-l+1) w_i[l-1]; hist index M+j-l.
  std::vector<double> y(m, 0.0), z(m, 0.0);
  for (int i = 0; i < c; ++i) {
    const double* wi = state.w.data() + std::size_t(i) * m;
    for (int j = 1; j <= m; ++j) {
      double acc_y = 0.0, acc_z = 0.0;
      for (int l = 1; l <= m; ++l) {
        acc_y += g_hist[i][m + j - l] * wi[l - 1];
        acc_z += h_hist[i][m + j - l] * wi[l - 1];
      }
      y[j - 1] += acc_y;
      z[j - 1] += acc_z;
    }
  }

  std::vector<double> e(m);
  for (int j = 0; j < m; ++j) {
    e[j] = d_blk[j] - y[j];
    if (!std::isfinite(e[j]) || std::abs(e[j]) > kDivergenceLimit)
      throw DivergenceError(state.block, "block_td_step error sample");
  }

  // Gradient phi_i(l) = sum_j e(j) g_i(kM+j-l+1), then weight update.
  for (int i = 0; i < c; ++i) {
    double* wi = state.w.data() + std::size_t(i) * m;
    for (int l = 1; l <= m; ++l) {
      double acc = 0.0;
      for (int j = 1; j <= m; ++j) acc += e[j - 1] * g_hist[i][m + j - l];
      wi[l - 1] += state.mu_w * acc;
    }
  }

  // Factor update from the pre-update z.
  state.q += state.mu_q * kernels::dot(z.data(), e.data(), m);

  state.prev_g = std::move(g_cur);
  state.prev_h = std::move(h_cur);
  ++state.block;
  return {std::move(y), std::move(e)};
}

}  // namespace efln::td
