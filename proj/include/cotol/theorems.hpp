#pragma once

// Property harness: every structural claim about the tolerances, checked on
// fixtures and on sampled (instance, E) pairs.
//
// Formula values come from FormulaPaths (the production tolerance module by
// default) and are compared against each other, against the brute-force
// oracles of reference.hpp, and against direct re-scoring of perturbed
// instances. Violations are data; only ResourceError escapes.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cotol/reference.hpp"
#include "cotol/tolerance.hpp"

namespace cotol {

struct Violation {
  std::string fingerprint;  ///< instance_fingerprint() of the offending instance
  std::string instance;     ///< instance name, for humans
  std::vector<std::string> subset;
  std::string observed;     ///< the values that broke the property

  auto operator<=>(const Violation&) const = default;
};

struct PropertyVerdict {
  std::string id;
  std::string statement;
  std::size_t instances_checked = 0;  ///< number of (instance, E) cases that exercised it
  std::vector<Violation> violations;  ///< sorted

  bool passed() const { return violations.empty(); }
};

/// The computations under test. Swapping one out is how the harness proves
/// it can detect a wrong formula.
struct FormulaPaths {
  std::function<ToleranceResult(const Instance&, const AnalysisCache&, ToleranceKind,
                                const ElementSet&)>
      compute = [](const Instance& instance, const AnalysisCache& cache, ToleranceKind kind,
                   const ElementSet& subset) {
        return compute_tolerance(instance, cache, kind, subset);
      };
};

struct HarnessOptions {
  /// Slack for product inequalities and equalities; sum and bottleneck are exact.
  Rational product_slack{1, 1000000};
  /// Compare every formula value against the definition oracles.
  bool oracle_checks = true;
  /// Also evaluate the built-in counterexample fixtures.
  bool counterexample_fixtures = true;
  OracleConfig oracle;
  FormulaPaths paths;
};

/// Stable hex digest of objective, elements, costs and solution family.
std::string instance_fingerprint(const Instance& instance);

/// Samples `subsets_per_instance` subsets E (|E| in 1..4, mixing E inside an
/// optimum, E avoiding an optimum, and unrestricted E) from each instance and
/// evaluates every property. Deterministic given (instances, seed).
std::vector<PropertyVerdict> check_all(const std::vector<Instance>& instances,
                                       std::size_t subsets_per_instance, std::uint64_t seed,
                                       const HarnessOptions& options = {});

/// Same, with explicitly chosen subsets per instance (subsets[i] for instances[i]).
std::vector<PropertyVerdict> check_subsets(const std::vector<Instance>& instances,
                                           const std::vector<std::vector<ElementSet>>& subsets,
                                           const HarnessOptions& options = {});

/// The subsets check_all would draw for one instance.
std::vector<ElementSet> sample_subsets(const Instance& instance, const AnalysisCache& cache,
                                       std::size_t count, std::uint64_t seed);

bool all_passed(const std::vector<PropertyVerdict>& verdicts);

}  // namespace cotol
