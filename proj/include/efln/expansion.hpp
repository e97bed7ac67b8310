#pragma once

#include <span>
#include <vector>

namespace efln::expansion {

enum class Kind { Efln, Tfln, Power, Linear };

struct ExpansionConfig {
  int order = 1;  // P
  Kind kind = Kind::Efln;

  /// 2P+1 channels for Efln/Tfln/Power, 1 for Linear.
  int channels() const { return kind == Kind::Linear ? 1 : 2 * order + 1; }
};

/// Channel-major expanded block: channels[i] has the same length as u.
using Channels = std::vector<std::vector<double>>;

/// EFLN expansion of one block at exponential factor q, element-wise:
///   channel 1:    u
///   channel 2p:   e^{-q|u|} sin(p pi u)
///   channel 2p+1: e^{-q|u|} cos(p pi u)
Channels efln_expand(std::span<const double> u, double q, int order);

/// Derivative channels h_i = dg_i/dq; channel 1 is identically zero.
Channels efln_derivative(std::span<const double> u, double q, int order);

/// Baseline expansions: Tfln = Efln at q=0, Power channel i = u^i,
/// Linear = the block itself.
Channels expand_baseline(std::span<const double> u, const ExpansionConfig& config);

}  // namespace efln::expansion
