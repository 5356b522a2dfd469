#pragma once

#include <vector>

namespace fracdyn {

/// Strictly monotone finite sequence converging toward `limit`.
struct MonotoneSequence {
  std::vector<double> values;
  double limit = 0.0;

  std::size_t size() const { return values.size(); }
  bool decreasing() const { return values.size() >= 2 && values[1] < values[0]; }

  /// Throws DomainError unless strictly monotone, approaching `limit`, and at
  /// least `min_len` long.
  void validate(std::size_t min_len = 16) const;
};

}  // namespace fracdyn
