#include "efln/expansion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace efln::expansion {

namespace {
constexpr double kPi = std::numbers::pi;
}

Channels efln_expand(std::span<const double> u, double q, int order) {
  if (order < 1) throw std::invalid_argument("efln_expand: order must be >= 1");
  const std::size_t m = u.size();
  Channels ch(2 * order + 1, std::vector<double>(m));
  for (std::size_t j = 0; j < m; ++j) ch[0][j] = u[j];
  for (int p = 1; p <= order; ++p) {
    for (std::size_t j = 0; j < m; ++j) {
      const double env = std::exp(-q * std::abs(u[j]));
      ch[2 * p - 1][j] = env * std::sin(p * kPi * u[j]);
      ch[2 * p][j] = env * std::cos(p * kPi * u[j]);
    }
  }
  return ch;
}

Channels efln_derivative(std::span<const double> u, double q, int order) {
  if (order < 1) throw std::invalid_argument("efln_derivative: order must be >= 1");
  const std::size_t m = u.size();
  Channels ch(2 * order + 1, std::vector<double>(m, 0.0));
  for (int p = 1; p <= order; ++p) {
    for (std::size_t j = 0; j < m; ++j) {
      const double au = std::abs(u[j]);
      const double env = -au * std::exp(-q * au);
      ch[2 * p - 1][j] = env * std::sin(p * kPi * u[j]);
      ch[2 * p][j] = env * std::cos(p * kPi * u[j]);
    }
  }
  return ch;
}

Channels expand_baseline(std::span<const double> u, const ExpansionConfig& config) {
  switch (config.kind) {
    case Kind::Tfln:
      return efln_expand(u, 0.0, config.order);
    case Kind::Power: {
      if (config.order < 1) throw std::invalid_argument("expand_baseline: order must be >= 1");
      const int c = 2 * config.order + 1;
      Channels ch(c, std::vector<double>(u.size()));
      for (std::size_t j = 0; j < u.size(); ++j) ch[0][j] = u[j];
      for (int i = 1; i < c; ++i)
        for (std::size_t j = 0; j < u.size(); ++j) ch[i][j] = ch[i - 1][j] * u[j];
      return ch;
    }
    case Kind::Linear:
      return Channels(1, std::vector<double>(u.begin(), u.end()));
    case Kind::Efln:
      throw std::invalid_argument("expand_baseline: use efln_expand for EFLN");
  }
  throw std::invalid_argument("expand_baseline: unknown kind");
}

}  // namespace efln::expansion
