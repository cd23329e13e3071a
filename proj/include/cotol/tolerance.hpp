#pragma once

#include <optional>
#include <string_view>

#include "cotol/analysis.hpp"
#include "cotol/extended_value.hpp"
#include "cotol/model.hpp"

namespace cotol {

/// How a tolerance value was obtained.
enum class Method {
  Formula,      ///< closed form licensed by a proven equality
  ExactSearch,  ///< exact rational optimisation or breakpoint search
  NumericSearch ///< floating-point search; value is within the configured precision
};

std::string_view to_string(Method method);

/// The six tolerance quantities. Single kinds take one element; set kinds
/// take a nonempty subset (a singleton is allowed).
enum class ToleranceKind { SingleUpper, SingleLower, UpperRegular, UpperReverse, LowerRegular, LowerReverse };

/// "upper", "lower", "upper-regular", "upper-reverse", "lower-regular", "lower-reverse".
std::string_view to_string(ToleranceKind kind);
ToleranceKind parse_tolerance_kind(std::string_view text);
bool is_single_kind(ToleranceKind kind);

struct ToleranceResult {
  ExtendedValue value;
  Method method = Method::Formula;
  /// An allocation attaining the value, or approaching it when the
  /// supremum/infimum is not attained. Absent for infinite values.
  std::optional<PerturbationVector> witness;
};

struct SearchOptions {
  /// Absolute precision of product-objective set searches.
  Rational product_precision{1, 1000000};
};

/// Extended single upper tolerance: +inf outside the union of optima,
/// otherwise the classical closed form for the objective kind.
ToleranceResult single_upper(const Instance& instance, const AnalysisCache& cache, ElementIndex e);

/// Single lower tolerance under the objective-value definition (sup decrease
/// of c(e) that leaves f(I) unchanged).
ToleranceResult single_lower(const Instance& instance, const AnalysisCache& cache, ElementIndex e);

/// g(e) = min over solutions containing e of the largest cost among the other
/// members; -inf when {e} itself is feasible, +inf when no solution contains e.
/// Bottleneck only; throws UnsupportedObjective otherwise.
ExtendedValue smallest_other_max(const Instance& instance, ElementIndex e);

/// Supremum of sum(alpha) over one shared non-negative increase on E under
/// which every optimal solution stays optimal.
ToleranceResult set_upper_regular(const Instance& instance, const AnalysisCache& cache,
                                  const ElementSet& subset, const SearchOptions& options = {});

/// Infimum of sum(alpha) over increases on E that make some optimal solution
/// non-optimal.
ToleranceResult set_upper_reverse(const Instance& instance, const AnalysisCache& cache,
                                  const ElementSet& subset, const SearchOptions& options = {});

/// Supremum of sum(alpha), 0 <= alpha_l < d_max(e_l), over decreases on E that
/// keep the optimal objective value.
ToleranceResult set_lower_regular(const Instance& instance, const AnalysisCache& cache,
                                  const ElementSet& subset, const SearchOptions& options = {});

/// Infimum of sum(alpha) over decreases on E that make the optimal objective
/// value drop.
ToleranceResult set_lower_reverse(const Instance& instance, const AnalysisCache& cache,
                                  const ElementSet& subset, const SearchOptions& options = {});

/// Dispatches on `kind`; single kinds require |subset| == 1.
ToleranceResult compute_tolerance(const Instance& instance, const AnalysisCache& cache,
                                  ToleranceKind kind, const ElementSet& subset,
                                  const SearchOptions& options = {});

/// Sorts, deduplicates and range-checks a subset. Throws DomainError when
/// empty and StructuralError for unknown positions.
ElementSet normalize_subset(const Instance& instance, ElementSet subset);

}  // namespace cotol
