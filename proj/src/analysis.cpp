#include "efln/analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace efln::analysis {

std::optional<double> mu_w_bound(const dsp::Spectrum& g_spectrum) {
  double norm2 = 0.0;
  for (const auto& v : g_spectrum) norm2 += std::norm(v);
  if (norm2 == 0.0) return std::nullopt;
  return 1.0 / (2.0 * norm2);
}

std::optional<double> mu_q_bound(const expansion::Channels& z_channels) {
  double max_norm2 = 0.0;
  for (const auto& zi : z_channels) {
    double n2 = 0.0;
    for (double v : zi) n2 += v * v;
    max_norm2 = std::max(max_norm2, n2);
  }
  if (max_norm2 == 0.0) return std::nullopt;
  return 1.0 / (2.0 * double(z_channels.size()) * max_norm2);
}

void MomentAccumulator::add(double sum_col_norm2, double col_sum_norm2,
                            std::span<const double> z) {
  double z_norm2 = 0.0, z_sum = 0.0;
  for (double v : z) {
    z_norm2 += v * v;
    z_sum += v;
  }
  acc_tr_g_ += sum_col_norm2;
  acc_tr_sg_ += col_sum_norm2;
  acc_tr_h_ += z_norm2;
  acc_tr_sh_ += z_sum * z_sum;
  ++count_;
}

void MomentAccumulator::add_matrix(const std::vector<std::vector<double>>& g_columns,
                                   std::span<const double> z) {
  if (g_columns.empty()) throw std::invalid_argument("add_matrix: empty G");
  double sum_norm2 = 0.0;
  std::vector<double> col_sum(g_columns[0].size(), 0.0);
  for (const auto& col : g_columns) {
    if (col.size() != col_sum.size()) throw std::invalid_argument("add_matrix: ragged G");
    for (std::size_t r = 0; r < col.size(); ++r) {
      sum_norm2 += col[r] * col[r];
      col_sum[r] += col[r];
    }
  }
  double sum2 = 0.0;
  for (double v : col_sum) sum2 += v * v;
  add(sum_norm2, sum2, z);
}

MomentEstimates MomentAccumulator::finalize() const {
  if (count_ == 0) throw std::runtime_error("MomentAccumulator: no samples");
  MomentEstimates est;
  est.m = m_;
  est.noise_var = noise_var_;
  est.tr_g = acc_tr_g_ / double(count_);
  est.tr_sg = acc_tr_sg_ / double(count_);
  est.tr_h = acc_tr_h_ / double(count_);
  est.tr_sh = acc_tr_sh_ / double(count_);
  return est;
}

double theoretical_emse(double mu_w, double mu_q, const MomentEstimates& est) {
  const double two_m = 2.0 * est.m;
  const double den_w = two_m - mu_w * est.tr_sg;
  const double den_q = two_m - mu_q * est.tr_sh;
  if (den_w <= 0.0 || den_q <= 0.0)
    throw std::runtime_error("theoretical_emse: outside stability region");
  return mu_w * est.noise_var * est.tr_g / den_w + mu_q * est.noise_var * est.tr_h / den_q;
}

double simulated_emse(const std::vector<std::vector<double>>& ybar_blocks,
                      const std::vector<std::vector<double>>& y_blocks) {
  if (ybar_blocks.size() != y_blocks.size() || ybar_blocks.empty())
    throw std::invalid_argument("simulated_emse: block count mismatch");
  double acc = 0.0;
  std::size_t m = ybar_blocks[0].size();
  for (std::size_t k = 0; k < ybar_blocks.size(); ++k) {
    if (ybar_blocks[k].size() != m || y_blocks[k].size() != m)
      throw std::invalid_argument("simulated_emse: block size mismatch");
    for (std::size_t j = 0; j < m; ++j) {
      double d = ybar_blocks[k][j] - y_blocks[k][j];
      acc += d * d;
    }
  }
  return acc / (double(m) * double(ybar_blocks.size()));
}

namespace {

long long ilog2_exact(int v) {
  int log2 = 0;
  int x = v;
  while (x > 1) {
    if (x & 1) throw std::invalid_argument("op_counts: M must be a power of two for FD rows");
    x >>= 1;
    ++log2;
  }
  return log2;
}

}  // namespace

OpCounts op_counts(Algo algo, int m, int p, int n) {
  if (m < 1 || p < 1) throw std::invalid_argument("op_counts: M and P must be >= 1");
  const long long M = m, P = p, N = n, C = 2 * P + 1;
  OpCounts oc;
  switch (algo) {
    case Algo::Efln:
      // Per-sample phases, scaled by the M samples of one block.
      oc.filtering = {M * (M * C), M * (M * C - 1)};
      oc.error = {0, M * 1};
      oc.weight = {M * (M * C + 1), M * (M * C)};
      oc.factor = {M * (M * C + 2), M * (M * C)};
      return oc;
    case Algo::Efslms:
      if (n < 1) throw std::invalid_argument("op_counts: N must be >= 1");
      oc.filtering = {M * (M * C), M * (M * C - 1)};
      oc.error = {M * N, M * N};
      oc.weight = {M * (M * C * (N + 1) + 1), M * (M * N * C)};
      oc.factor = {M * (M * C * (N + 1) + 2), M * (M * N * C)};
      return oc;
    case Algo::Fdefln: {
      const long long L = ilog2_exact(2 * m);  // log2(2M)
      const long long fft = 2 * M * L;
      oc.filtering = {(2 * fft + 8 * M) * C, (2 * fft + 4 * M) * C + 2 * M * P};
      oc.error = {fft, fft + M};
      oc.weight = {(2 * fft + 10 * M) * C, (2 * fft + 8 * M) * C};
      oc.factor = {(2 * fft + 8 * M) * C + M + 1, (2 * fft + 5 * M) * C};
      return oc;
    }
    case Algo::Fdefslms: {
      if (n < 1) throw std::invalid_argument("op_counts: N must be >= 1");
      const long long L = ilog2_exact(2 * m);
      const long long fft = 2 * M * L;
      oc.filtering = {(2 * fft + 8 * M) * C, (2 * fft + 4 * M) * C + 2 * M * P};
      oc.error = {fft + M * N, fft + M * N};
      oc.weight = {(4 * fft + 18 * M) * C, (4 * fft + 12 * M) * C};
      oc.factor = {(4 * fft + 16 * M) * C + M + 1, (4 * fft + 9 * M) * C};
      return oc;
    }
  }
  throw std::invalid_argument("op_counts: unknown algorithm");
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace efln::analysis
