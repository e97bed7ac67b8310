#pragma once

#include <span>
#include <utility>
#include <vector>

#include "efln/expansion.hpp"
#include "efln/fft.hpp"

namespace efln::fd {

/// Abstract operation counters following the complexity model of the
/// published closed forms: a 2M-point transform costs 2M log2(2M) real
/// multiplications and additions, a 2M-bin complex Hadamard product costs
/// 8M multiplications and 4M additions. Populated only when attached to a
/// state and 2M is a power of two.
struct OpCounter {
  struct Phase {
    long long mults = 0;
    long long adds = 0;
  };
  Phase filtering, error, weight, factor;
};

/// Per-block observation used by the steady-state moment estimator:
/// column sums/norms of the expanded input matrix G(k) and the z vector.
struct BlockProbe {
  double sum_col_norm2 = 0.0;  // sum_j ||g(kM+j)||^2
  double col_sum_norm2 = 0.0;  // ||sum_j g(kM+j)||^2
  std::vector<double> z;       // H^T(k) w(k), length M
};

struct FdeflnState {
  int m = 0;
  int p = 0;
  double q = 0.0;
  double mu_w = 0.0;
  double mu_q = 0.0;
  std::vector<dsp::Spectrum> w_spec;  // 2P+1 spectra of length 2M
  expansion::Channels prev_g;
  expansion::Channels prev_h;
  long block = 0;
  OpCounter* counter = nullptr;
  BlockProbe* probe = nullptr;
};

FdeflnState fdefln_init(int m, int p, double mu_w, double mu_q, double q0);

/// One block of the overlap-save frequency-domain algorithm: per-channel
/// filtering, weight adaptation through the zero-tail gradient constraint,
/// and the exponential-factor update from the pre-update weight spectra.
/// Returns (y_blk, e_blk).
std::pair<std::vector<double>, std::vector<double>> fdefln_block(
    FdeflnState& state, std::span<const double> u_blk, std::span<const double> d_blk);

/// Time-domain weights: first M samples of the inverse transform of each
/// weight spectrum, concatenated channel-major. Throws if the zero-tail
/// constraint is violated (residue >= 1e-9 relative).
std::vector<double> fdefln_weights_time(const FdeflnState& state);

}  // namespace efln::fd
