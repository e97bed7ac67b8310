#pragma once

#include <span>
#include <vector>

#include "efln/expansion.hpp"
#include "efln/fft.hpp"

namespace efln::nanc {

/// Secondary path S(z): FIR taps plus their zero-padded 2M-point spectrum,
/// with an optional output nonlinearity a*tanh(b*x) applied by the plant
/// simulation only; the adaptation path always uses the linear spectrum.
struct SecondaryPath {
  enum class Nl { None, Tanh };

  std::vector<double> taps;
  dsp::Spectrum spec;
  int m = 0;
  Nl nl = Nl::None;
  double nl_gain = 0.0;   // a
  double nl_slope = 0.0;  // b

  static SecondaryPath make(std::vector<double> taps, int m, Nl nl = Nl::None,
                            double nl_gain = 0.0, double nl_slope = 0.0);

  /// Swap taps (e.g. abrupt sign flip) and rebuild the spectrum.
  void set_taps(std::vector<double> new_taps);

  double apply_nl(double x) const;
};

/// Frequency-domain filtered-s state. The expansion config selects the
/// algorithm: Efln gives FDEFsLMS; Tfln/Power/Linear give the FDFsLMS,
/// FDPFsLMS and FDFxLMS baselines (factor frozen).
struct FdefslmsState {
  int m = 0;
  expansion::ExpansionConfig cfg;
  double q = 0.0;
  double mu_w = 0.0;
  double mu_q = 0.0;
  std::vector<dsp::Spectrum> w_spec;
  expansion::Channels prev_g, prev_h;
  expansion::Channels prev_ghat, prev_hhat;  // filtered-channel caches
  std::vector<double> prev_y;
  long block = 0;
};

FdefslmsState fdefslms_init(int m, int p, double mu_w, double mu_q, double q0);
FdefslmsState fd_baseline_init(int m, const expansion::ExpansionConfig& cfg, double mu_w,
                               double q0 = 0.0);

/// One block of the FDEFsLMS algorithm. Returns the residual e(k).
std::vector<double> fdefslms_block(FdefslmsState& state, const SecondaryPath& path,
                                   std::span<const double> u_blk,
                                   std::span<const double> d_blk);

/// Same pipeline over a baseline expansion, exponential factor frozen.
std::vector<double> filtered_baseline_block(FdefslmsState& state, const SecondaryPath& path,
                                            std::span<const double> u_blk,
                                            std::span<const double> d_blk);

/// Sample-wise time-domain EFsLMS state.
struct EfslmsState {
  int m = 0;
  int p = 0;
  double q = 0.0;
  double mu_w = 0.0;
  double mu_q = 0.0;
  std::vector<double> w;
  std::vector<double> u_hist;  // newest first, length M+N-1
  std::vector<double> y_hist;  // newest first, length N
  long sample = 0;
};

EfslmsState efslms_init(int m, int p, double mu_w, double mu_q, double q0, int path_len);

/// One sample of EFsLMS: expansion at the current q over the whole input
/// window, channels filtered through the (linear) secondary-path model,
/// q update from the pre-update weights. Returns the residual e(n).
double efslms_step(EfslmsState& state, const SecondaryPath& path, double u_n, double d_n);

}  // namespace efln::nanc
