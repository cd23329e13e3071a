#pragma once

// Brute-force evaluations of every tolerance straight from its definition.
//
// Nothing here calls into the tolerance module. Optima are recomputed from
// the costs, perturbations are evaluated by re-scoring every solution, and
// each set tolerance is solved by a method unrelated to the production path:
//
//   sum         Fourier-Motzkin elimination over exact rationals
//   bottleneck  enumeration of every ordering of the perturbed costs among
//               the fixed cost levels
//   product     branch-and-bound / cutting planes in log coordinates, and
//               support enumeration for the infima

#include <cstddef>

#include "cotol/extended_value.hpp"
#include "cotol/model.hpp"
#include "cotol/tolerance.hpp"

namespace cotol {

struct OracleConfig {
  /// Absolute precision of the product searches.
  Rational product_precision{1, 1000000};
  /// Largest |E| accepted by the set oracles.
  std::size_t max_subset_size = 6;
  /// Cap on bottleneck level assignments per query.
  std::size_t max_level_assignments = 5'000'000;
  /// Cap on rows in any intermediate elimination system.
  std::size_t max_elimination_rows = 200'000;
  /// Cap on branch-and-bound nodes / cutting-plane rounds.
  std::size_t max_search_steps = 200'000;
};

/// sup of t >= 0 such that raising c(e) by t keeps every optimum optimal.
ExtendedValue oracle_single_upper(const Instance& instance, ElementIndex e);

/// sup of t in [0, d_max(e)) such that lowering c(e) by t keeps f(I).
ExtendedValue oracle_single_lower(const Instance& instance, ElementIndex e);

/// One of the four set kinds, evaluated from its definition. Single kinds are
/// accepted for |E| = 1 and routed to the single oracles.
/// Throws ResourceError when |E| > max_subset_size.
ExtendedValue oracle_set_tolerance(const Instance& instance, const ElementSet& subset,
                                   ToleranceKind kind, const OracleConfig& config = {});

/// Set lower tolerances under the older optimal-solution semantics:
/// lower-regular keeps every optimum optimal, lower-reverse makes some optimum
/// non-optimal. Only defined when some optimum avoids E; throws DomainError
/// otherwise. Single lower is accepted and treated as the set {e}.
ExtendedValue oracle_current_definition(const Instance& instance, const ElementSet& subset,
                                        ToleranceKind kind, const OracleConfig& config = {});

/// The discarded alternatives, kept to document why they were discarded:
/// a lower tolerance that keeps every optimum optimal (no domain check) and an
/// upper tolerance that only keeps the optimal value.
ExtendedValue oracle_preservation_lower(const Instance& instance, ElementIndex e);
ExtendedValue oracle_value_upper(const Instance& instance, ElementIndex e);

}  // namespace cotol
