#pragma once

#include <vector>

#include "cotol/model.hpp"

namespace cotol {

/// Enumeration-level facts about an instance.
///
/// `ute` is the union of all optimal solutions and `lte` the ground set minus
/// their intersection; both are the domains on which the classical single
/// tolerances are defined.
struct AnalysisCache {
  Rational optimal_value;
  std::vector<SolutionIndex> optimal_set;
  /// objective_value of every family member, indexed like Instance::solutions().
  std::vector<Rational> solution_costs;
  ElementSet ute;
  ElementSet lte;

  bool in_ute(ElementIndex e) const;
  bool in_lte(ElementIndex e) const;
  bool is_optimal(SolutionIndex s) const;
};

AnalysisCache analyze(const Instance& instance);

/// Solutions containing e.
std::vector<SolutionIndex> d_plus(const Instance& instance, ElementIndex e);
/// Solutions avoiding e.
std::vector<SolutionIndex> d_minus(const Instance& instance, ElementIndex e);

/// Some optimal solution contains every element of `subset`.
bool in_uts(const Instance& instance, const AnalysisCache& cache, const ElementSet& subset);
/// Some optimal solution avoids every element of `subset`.
bool in_lts(const Instance& instance, const AnalysisCache& cache, const ElementSet& subset);

}  // namespace cotol
