#pragma once

#include <stdexcept>
#include <string>

namespace efln {

/// Raised when an adaptive run produces a non-finite or absurdly large
/// error sample (|e| > 1e12). Carries the block index for diagnostics.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(long block, const std::string& what)
      : std::runtime_error("divergence at block " + std::to_string(block) + ": " + what),
        block_(block) {}
  long block() const { return block_; }

 private:
  long block_;
};

constexpr double kDivergenceLimit = 1e12;

}  // namespace efln
