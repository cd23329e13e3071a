#pragma once

#include <vector>

#include "cotol/reference.hpp"

namespace cotol::reference_detail {

/// Objective of every solution under an arbitrary cost vector.
struct Landscape {
  std::vector<Rational> values;
  Rational optimum;
  std::vector<bool> optimal;
};

std::vector<Rational> costs_of(const Instance& instance);
Landscape score(const Instance& instance, const std::vector<Rational>& costs);

/// What a perturbation has to achieve.
enum class Condition {
  PreserveAll,  ///< every original optimum is still optimal
  BreakSome,    ///< some original optimum is no longer optimal
  ValueKept,    ///< the optimal value is unchanged
  ValueDrops    ///< the optimal value decreased
};

bool satisfied(Condition condition, const Landscape& original, const Landscape& perturbed);

ExtendedValue bottleneck_levels(const Instance& instance, const ElementSet& subset,
                                Direction direction, Condition condition,
                                const OracleConfig& config);

/// Product set tolerances. `current` selects the optimal-solution semantics
/// for the lower kinds.
ExtendedValue product_set(const Instance& instance, const ElementSet& subset, ToleranceKind kind,
                          bool current, const OracleConfig& config);

unsigned long grid_denominator(const Rational& precision);

}  // namespace cotol::reference_detail
