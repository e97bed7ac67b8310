#pragma once

#include <span>
#include <utility>
#include <vector>

#include "efln/expansion.hpp"

namespace efln::td {

/// Time-domain EFLN state. Usable either sample-by-sample (efln_lms_step)
/// or block-by-block (block_td_step); the block form is the numerical
/// oracle for the frequency-domain implementation and mirrors its
/// previous-block channel caches.
struct TdState {
  int m = 0;  // tapped delay / block length
  int p = 0;  // expansion order
  double q = 0.0;
  double mu_w = 0.0;
  double mu_q = 0.0;
  std::vector<double> w;      // M(2P+1), channel-major
  std::vector<double> delay;  // last M inputs, newest first (sample mode)
  expansion::Channels prev_g;  // previous block's channels at their q (block mode)
  expansion::Channels prev_h;
  long block = 0;
  long sample = 0;
};

TdState td_init(int m, int p, double mu_w, double mu_q, double q0);

/// One sample of the EFLN-LMS algorithm. The whole tapped vector is
/// re-expanded at the current q(n); the q update uses the pre-update
/// weights. Returns (y, e).
std::pair<double, double> efln_lms_step(TdState& state, double u_n, double d_n);

/// One block of the time-domain counterpart of the frequency-domain
/// algorithm: w(k+1) = w(k) + mu_w G(k) e(k), q(k+1) = q(k) + mu_q wT(k) H(k) e(k),
/// with expansion channels cached per block exactly as the overlap-save
/// version caches them. Returns (y_blk, e_blk).
std::pair<std::vector<double>, std::vector<double>> block_td_step(
    TdState& state, std::span<const double> u_blk, std::span<const double> d_blk);

}  // namespace efln::td
