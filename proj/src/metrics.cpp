#include "efln/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace efln::metrics {

double mse_db(std::span<const double> errors) {
  if (errors.empty()) throw std::invalid_argument("mse_db: empty window");
  double acc = 0.0;
  for (double e : errors) acc += e * e;
  acc /= static_cast<double>(errors.size());
  if (acc <= 0.0) return kMseFloorDb;
  return 10.0 * std::log10(acc);
}

double erle_db(std::span<const double> d, std::span<const double> e) {
  if (d.size() != e.size() || d.empty())
    throw std::invalid_argument("erle_db: mismatched or empty windows");
  double pd = 0.0;
  double pe = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    pd += d[i] * d[i];
    pe += e[i] * e[i];
  }
  if (pe <= 0.0) return kErleCapDb;
  if (pd <= 0.0) return -kErleCapDb;
  return 10.0 * std::log10(pd / pe);
}

std::vector<double> moving_average(std::span<const double> values, int window) {
  if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  std::vector<double> out(values.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += values[i];
    if (i >= static_cast<std::size_t>(window)) acc -= values[i - window];
    const std::size_t n = std::min<std::size_t>(i + 1, window);
    out[i] = acc / static_cast<double>(n);
  }
  return out;
}

}  // namespace efln::metrics
