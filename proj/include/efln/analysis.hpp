#pragma once

#include <optional>
#include <span>
#include <vector>

#include "efln/expansion.hpp"
#include "efln/fft.hpp"

namespace efln::analysis {

/// Step-size bound for the weight update from one channel spectrum:
/// 1/(2 ||g_i(k~)||^2). Empty optional means unbounded (zero spectrum).
std::optional<double> mu_w_bound(const dsp::Spectrum& g_spectrum);

/// Step-size bound for the factor update: 1/(2 (2P+1) max_i ||z_i(k)||^2).
/// Empty optional means unbounded (all channels zero).
std::optional<double> mu_q_bound(const expansion::Channels& z_channels);

/// Plug-in moment estimates for the steady-state EMSE closed form.
/// Tr[S A] with all-ones S is the sum of all entries of A, so the four
/// traces reduce to column-sum statistics of G(k) and the z vector.
struct MomentEstimates {
  double tr_g = 0.0;   // Tr E{G^T G}     = E sum_j ||g(kM+j)||^2
  double tr_sg = 0.0;  // Tr[S E{G^T G}]  = E ||sum_j g(kM+j)||^2
  double tr_h = 0.0;   // Tr E{H^T w w^T H} = E ||z||^2
  double tr_sh = 0.0;  // Tr[S E{...}]      = E (sum_j z_j)^2
  double noise_var = 0.0;
  int m = 0;
};

class MomentAccumulator {
 public:
  MomentAccumulator(int m, double noise_var) : m_(m), noise_var_(noise_var) {}

  /// One steady-state block: probe quantities from the running filter.
  void add(double sum_col_norm2, double col_sum_norm2, std::span<const double> z);

  /// Explicit form for tests: G given as its M tapped columns.
  void add_matrix(const std::vector<std::vector<double>>& g_columns,
                  std::span<const double> z);

  long count() const { return count_; }
  MomentEstimates finalize() const;

 private:
  int m_;
  double noise_var_;
  long count_ = 0;
  double acc_tr_g_ = 0.0, acc_tr_sg_ = 0.0, acc_tr_h_ = 0.0, acc_tr_sh_ = 0.0;
};

/// Closed-form steady-state EMSE:
///   mu_w s^2 trG/(2M - mu_w trSG) + mu_q s^2 trH/(2M - mu_q trSH).
/// Throws if either denominator is non-positive (outside stability region).
double theoretical_emse(double mu_w, double mu_q, const MomentEstimates& m);

/// Simulated steady-state EMSE: (1/M) mean over blocks of ||y_bar - y||^2.
double simulated_emse(const std::vector<std::vector<double>>& ybar_blocks,
                      const std::vector<std::vector<double>>& y_blocks);

/// Per-block operation counts from the published closed forms.
enum class Algo { Efln, Fdefln, Efslms, Fdefslms };

struct OpCounts {
  struct Phase {
    long long mults = 0;
    long long adds = 0;
  };
  Phase filtering, error, weight, factor;
  long long total_mults() const {
    return filtering.mults + error.mults + weight.mults + factor.mults;
  }
  long long total_adds() const {
    return filtering.adds + error.adds + weight.adds + factor.adds;
  }
};

/// Evaluates the complexity table for one block. Frequency-domain rows
/// require M to be a power of two (exact log2); throws otherwise.
OpCounts op_counts(Algo algo, int m, int p, int n);

double to_db(double linear);

}  // namespace efln::analysis
