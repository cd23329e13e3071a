#pragma once

// Exact Fourier-Motzkin elimination with strict/non-strict tracking.

#include <cstddef>
#include <vector>

#include "cotol/rational.hpp"

namespace cotol::fm {

/// coef . x <= bound, or < bound when strict.
struct Row {
  std::vector<Rational> coef;
  Rational bound;
  bool strict = false;
};

/// Feasible values of the last variable after eliminating all others.
struct Range {
  bool empty = false;
  bool has_lower = false;
  bool lower_strict = false;
  Rational lower;
  bool has_upper = false;
  bool upper_strict = false;
  Rational upper;
};

/// Eliminates every variable except the last one. Throws ResourceError when
/// an intermediate system grows beyond `max_rows`.
Range project_onto_last(std::vector<Row> rows, std::size_t variables, std::size_t max_rows);

}  // namespace cotol::fm
