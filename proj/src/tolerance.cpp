#include "cotol/tolerance.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cotol/errors.hpp"
#include "cotol/linear_program.hpp"
#include "product_search.hpp"

namespace cotol {
namespace {

using Pattern = std::vector<int>;

void check_element(const Instance& instance, ElementIndex e) {
  if (e >= instance.element_count()) {
    throw StructuralError("element index " + std::to_string(e) + " out of range");
  }
}

ExtendedValue best_over(const AnalysisCache& cache, const std::vector<SolutionIndex>& family) {
  ExtendedValue best = ExtendedValue::infinity();
  for (SolutionIndex s : family) best = min(best, ExtendedValue(cache.solution_costs[s]));
  return best;
}

PerturbationVector single_witness(Direction direction, ElementIndex e, const Rational& delta) {
  PerturbationVector witness;
  witness.direction = direction;
  witness.deltas[e] = delta;
  return witness;
}

ToleranceResult infinite(Method method) {
  return ToleranceResult{ExtendedValue::infinity(), method, std::nullopt};
}

// Pattern of one solution restricted to E: 1 where the element lies in S.
Pattern membership(const Instance& instance, SolutionIndex s, const ElementSet& subset) {
  Pattern row(subset.size(), 0);
  for (std::size_t l = 0; l < subset.size(); ++l) row[l] = instance.contains(s, subset[l]) ? 1 : 0;
  return row;
}

bool has_positive(const Pattern& row) {
  return std::any_of(row.begin(), row.end(), [](int v) { return v > 0; });
}

// Keeps, per coefficient pattern, the cheapest competing solution cost.
// Patterns without a positive entry never bind for non-negative variables.
using PatternRows = std::map<Pattern, Rational>;

// Rows  1[S* n E] - 1[S n E]  with bound c(S): preserving every optimum.
PatternRows preservation_rows(const Instance& instance, const AnalysisCache& cache,
                              const ElementSet& subset) {
  std::vector<Pattern> optimal_patterns;
  for (SolutionIndex s : cache.optimal_set) {
    Pattern row = membership(instance, s, subset);
    if (std::find(optimal_patterns.begin(), optimal_patterns.end(), row) == optimal_patterns.end()) {
      optimal_patterns.push_back(std::move(row));
    }
  }
  PatternRows rows;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    const Pattern other = membership(instance, s, subset);
    for (const Pattern& best : optimal_patterns) {
      Pattern row(subset.size());
      for (std::size_t l = 0; l < row.size(); ++l) row[l] = best[l] - other[l];
      if (!has_positive(row)) continue;
      auto [it, inserted] = rows.emplace(std::move(row), cache.solution_costs[s]);
      if (!inserted && cache.solution_costs[s] < it->second) it->second = cache.solution_costs[s];
    }
  }
  return rows;
}

// Rows  1[S n E]  with bound c(S): no solution drops below f(I).
PatternRows value_rows(const Instance& instance, const AnalysisCache& cache,
                       const ElementSet& subset) {
  PatternRows rows;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    Pattern row = membership(instance, s, subset);
    if (!has_positive(row)) continue;
    auto [it, inserted] = rows.emplace(std::move(row), cache.solution_costs[s]);
    if (!inserted && cache.solution_costs[s] < it->second) it->second = cache.solution_costs[s];
  }
  return rows;
}

// max sum(alpha) s.t. pattern . alpha <= cost - f, alpha >= 0, in exact arithmetic.
ToleranceResult exact_linear_sup(const PatternRows& rows, const Rational& optimum,
                                 const ElementSet& subset, Direction direction) {
  const std::size_t k = subset.size();
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (const auto& [pattern, cost] : rows) {
    a.emplace_back(pattern.begin(), pattern.end());
    b.push_back(cost - optimum);
  }
  const std::vector<Rational> objective(k, Rational(1));
  const auto result = lp::maximize(a, b, objective);
  if (result.status == lp::Status::Unbounded) return infinite(Method::ExactSearch);
  if (result.status == lp::Status::Infeasible) {
    throw DomainError("zero allocation infeasible; instance cache is inconsistent");
  }
  PerturbationVector witness;
  witness.direction = direction;
  for (std::size_t l = 0; l < k; ++l) witness.deltas[subset[l]] = result.x[l];
  return ToleranceResult{ExtendedValue(result.value), Method::ExactSearch, std::move(witness)};
}

unsigned long grid_denominator(const SearchOptions& options) {
  if (options.product_precision <= 0) throw DomainError("product precision must be positive");
  const Rational scaled = Rational(1000) / options.product_precision;
  mpz_class ceiling;
  mpz_cdiv_q(ceiling.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (!ceiling.fits_ulong_p()) throw ResourceError("product precision is too fine");
  return ceiling.get_ui();
}

Real search_gap(const SearchOptions& options) { return to_real(options.product_precision) / 10; }

ToleranceResult numeric_result(Real value, const std::vector<Real>& alpha, const ElementSet& subset,
                               Direction direction, const SearchOptions& options) {
  const unsigned long denominator = grid_denominator(options);
  PerturbationVector witness;
  witness.direction = direction;
  for (std::size_t l = 0; l < subset.size(); ++l) {
    witness.deltas[subset[l]] = round_to_grid(std::max<Real>(alpha[l], 0), denominator);
  }
  return ToleranceResult{ExtendedValue(round_to_grid(std::max<Real>(value, 0), denominator)),
                         Method::NumericSearch, std::move(witness)};
}

Real log_ratio(const Rational& numerator, const Rational& denominator) {
  return std::log(to_real(numerator / denominator));
}

bool subset_within_ute(const AnalysisCache& cache, const ElementSet& subset) {
  return std::all_of(subset.begin(), subset.end(), [&](ElementIndex e) { return cache.in_ute(e); });
}

// Minimum of a single tolerance over E; the witness of the minimiser is kept.
template <class Single>
ToleranceResult min_single(const ElementSet& subset, Single single) {
  ToleranceResult best = infinite(Method::Formula);
  for (ElementIndex e : subset) {
    ToleranceResult candidate = single(e);
    if (candidate.value < best.value) best = std::move(candidate);
  }
  best.method = Method::Formula;
  return best;
}

// --- product upper regular -------------------------------------------------

// Drops rows implied by another row: b >= a componentwise with a tighter bound.
void prune_dominated(PatternRows& rows) {
  std::vector<const Pattern*> keys;
  for (const auto& entry : rows) keys.push_back(&entry.first);
  std::vector<Pattern> doomed;
  for (const Pattern* a : keys) {
    for (const Pattern* b : keys) {
      if (a == b) continue;
      bool covers = true;
      for (std::size_t l = 0; l < a->size() && covers; ++l) covers = (*b)[l] >= (*a)[l];
      if (covers && rows.at(*b) <= rows.at(*a)) {
        doomed.push_back(*a);
        break;
      }
    }
  }
  for (const Pattern& a : doomed) rows.erase(a);
}

// A nonzero d >= 0 with pattern . d <= 0 for every row makes the region unbounded.
bool recession_cone_nontrivial(const PatternRows& rows, std::size_t k) {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (const auto& [pattern, cost] : rows) {
    a.emplace_back(pattern.begin(), pattern.end());
    b.emplace_back(0);
  }
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<Rational> cap(k, Rational(0));
    cap[l] = 1;
    a.push_back(std::move(cap));
    b.emplace_back(1);
  }
  const auto result = lp::maximize(a, b, std::vector<Rational>(k, Rational(1)));
  return result.status == lp::Status::Optimal && result.value > 0;
}

ToleranceResult product_upper_regular(const Instance& instance, const AnalysisCache& cache,
                                      const ElementSet& subset, const SearchOptions& options) {
  PatternRows rows = preservation_rows(instance, cache, subset);
  if (recession_cone_nontrivial(rows, subset.size())) return infinite(Method::NumericSearch);
  prune_dominated(rows);
  std::vector<product_search::LogRow> log_rows;
  for (const auto& [pattern, cost] : rows) {
    log_rows.push_back({pattern, log_ratio(cost, cache.optimal_value)});
  }
  std::vector<Real> costs;
  for (ElementIndex e : subset) costs.push_back(to_real(instance.cost(e)));
  const auto best = product_search::max_convex_over_vertices(costs, log_rows);
  return numeric_result(best.value, best.alpha, subset, Direction::Increase, options);
}

// --- product upper reverse -------------------------------------------------

ToleranceResult product_upper_reverse(const Instance& instance, const AnalysisCache& cache,
                                      const ElementSet& subset, const SearchOptions& options) {
  bool found = false;
  product_search::Allocation best;
  std::vector<ElementIndex> best_support;
  for (SolutionIndex star : cache.optimal_set) {
    for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
      if (s == star) continue;
      // Raising an element shared by both sides leaves their ratio unchanged.
      std::vector<ElementIndex> support;
      std::vector<Real> costs;
      for (ElementIndex e : subset) {
        if (instance.contains(star, e) && !instance.contains(s, e)) {
          support.push_back(e);
          costs.push_back(to_real(instance.cost(e)));
        }
      }
      if (support.empty()) continue;
      auto fill = product_search::water_fill(costs, log_ratio(cache.solution_costs[s], cache.optimal_value));
      if (!found || fill.value < best.value) {
        found = true;
        best = std::move(fill);
        best_support = std::move(support);
      }
    }
  }
  if (!found) return infinite(Method::NumericSearch);
  std::vector<Real> alpha(subset.size(), 0);
  for (std::size_t i = 0; i < best_support.size(); ++i) {
    const auto l = static_cast<std::size_t>(
        std::lower_bound(subset.begin(), subset.end(), best_support[i]) - subset.begin());
    alpha[l] = best.alpha[i];
  }
  return numeric_result(best.value, alpha, subset, Direction::Increase, options);
}

// --- product lower regular -------------------------------------------------

ToleranceResult product_lower_regular(const Instance& instance, const AnalysisCache& cache,
                                      const ElementSet& subset, const SearchOptions& options) {
  const std::size_t k = subset.size();
  // Elements in no solution may drop all the way towards zero.
  // Elements in a solution that is already optimal cannot move at all.
  std::vector<bool> unconstrained(k, true);
  std::vector<bool> frozen(k, false);
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    for (std::size_t l = 0; l < k; ++l) {
      if (!instance.contains(s, subset[l])) continue;
      unconstrained[l] = false;
      if (cache.solution_costs[s] == cache.optimal_value) frozen[l] = true;
    }
  }
  std::vector<std::size_t> free_vars;
  for (std::size_t l = 0; l < k; ++l) {
    if (!unconstrained[l] && !frozen[l]) free_vars.push_back(l);
  }

  std::vector<Real> alpha(k, 0);
  Real total = 0;
  for (std::size_t l = 0; l < k; ++l) {
    if (unconstrained[l]) {
      alpha[l] = to_real(instance.cost(subset[l]));
      total += alpha[l];
    }
  }
  if (!free_vars.empty()) {
    std::map<Pattern, Rational> rows;
    for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
      Pattern row(free_vars.size(), 0);
      for (std::size_t i = 0; i < free_vars.size(); ++i) {
        row[i] = instance.contains(s, subset[free_vars[i]]) ? 1 : 0;
      }
      if (!has_positive(row)) continue;
      auto [it, inserted] = rows.emplace(std::move(row), cache.solution_costs[s]);
      if (!inserted && cache.solution_costs[s] < it->second) it->second = cache.solution_costs[s];
    }
    std::vector<product_search::LogRow> log_rows;
    for (const auto& [pattern, cost] : rows) {
      log_rows.push_back({pattern, log_ratio(cost, cache.optimal_value)});
    }
    std::vector<Real> costs;
    for (std::size_t l : free_vars) costs.push_back(to_real(instance.cost(subset[l])));
    const auto best = product_search::max_concave_barrier(costs, log_rows, search_gap(options));
    for (std::size_t i = 0; i < free_vars.size(); ++i) alpha[free_vars[i]] = best.alpha[i];
    total += best.value;
  }
  auto result = numeric_result(total, alpha, subset, Direction::Decrease, options);
  // Rounding may push a witness delta onto d_max; keep it strictly inside.
  const unsigned long denominator = grid_denominator(options);
  for (auto& [e, delta] : result.witness->deltas) {
    if (delta >= instance.cost(e)) delta = instance.cost(e) - Rational(1, denominator);
    if (delta < 0) delta = 0;
  }
  return result;
}

// --- bottleneck ------------------------------------------------------------

ToleranceResult bottleneck_upper_regular(const Instance& instance, const AnalysisCache& cache,
                                         const ElementSet& subset) {
  if (!subset_within_ute(cache, subset)) return infinite(Method::ExactSearch);
  auto avoids = [&](SolutionIndex s) {
    return std::none_of(subset.begin(), subset.end(),
                        [&](ElementIndex e) { return instance.contains(s, e); });
  };
  // Every element of E may be lifted to one common level V: c* when some
  // optimum avoids E, otherwise the cheapest solution avoiding E.
  ExtendedValue level = ExtendedValue::infinity();
  if (std::any_of(cache.optimal_set.begin(), cache.optimal_set.end(), avoids)) {
    level = ExtendedValue(cache.optimal_value);
  } else {
    for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
      if (avoids(s)) level = min(level, ExtendedValue(cache.solution_costs[s]));
    }
  }
  if (!level.is_finite()) return infinite(Method::ExactSearch);
  PerturbationVector witness;
  Rational total = 0;
  for (ElementIndex e : subset) {
    const Rational delta = level.value() - instance.cost(e);
    witness.deltas[e] = delta;
    total += delta;
  }
  return ToleranceResult{ExtendedValue(total), Method::ExactSearch, std::move(witness)};
}

ToleranceResult bottleneck_lower_reverse(const Instance& instance, const AnalysisCache& cache,
                                         const ElementSet& subset) {
  const Rational& target = cache.optimal_value;
  bool found = false;
  Rational best;
  SolutionIndex best_solution = 0;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    bool rest_below = true;
    Rational needed = 0;
    for (ElementIndex e : instance.solution(s)) {
      const bool in_subset = std::binary_search(subset.begin(), subset.end(), e);
      if (!in_subset) {
        if (instance.cost(e) >= target) rest_below = false;
      } else if (instance.cost(e) >= target) {
        needed += instance.cost(e) - target;
      }
    }
    if (!rest_below) continue;
    if (!found || needed < best) {
      found = true;
      best = needed;
      best_solution = s;
    }
  }
  if (!found) return infinite(Method::ExactSearch);
  PerturbationVector witness;
  witness.direction = Direction::Decrease;
  for (ElementIndex e : instance.solution(best_solution)) {
    if (std::binary_search(subset.begin(), subset.end(), e) && instance.cost(e) >= target) {
      witness.deltas[e] = instance.cost(e) - target;
    }
  }
  return ToleranceResult{ExtendedValue(best), Method::ExactSearch, std::move(witness)};
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::Formula:
      return "formula";
    case Method::ExactSearch:
      return "exact-search";
    case Method::NumericSearch:
      return "numeric-search";
  }
  return "?";
}

std::string_view to_string(ToleranceKind kind) {
  switch (kind) {
    case ToleranceKind::SingleUpper:
      return "upper";
    case ToleranceKind::SingleLower:
      return "lower";
    case ToleranceKind::UpperRegular:
      return "upper-regular";
    case ToleranceKind::UpperReverse:
      return "upper-reverse";
    case ToleranceKind::LowerRegular:
      return "lower-regular";
    case ToleranceKind::LowerReverse:
      return "lower-reverse";
  }
  return "?";
}

ToleranceKind parse_tolerance_kind(std::string_view text) {
  for (auto kind : {ToleranceKind::SingleUpper, ToleranceKind::SingleLower,
                    ToleranceKind::UpperRegular, ToleranceKind::UpperReverse,
                    ToleranceKind::LowerRegular, ToleranceKind::LowerReverse}) {
    if (text == to_string(kind)) return kind;
  }
  throw ParseError("unknown tolerance kind \"" + std::string(text) +
                   "\" (expected upper, lower, upper-regular, upper-reverse, lower-regular or "
                   "lower-reverse)");
}

bool is_single_kind(ToleranceKind kind) {
  return kind == ToleranceKind::SingleUpper || kind == ToleranceKind::SingleLower;
}

ToleranceResult single_upper(const Instance& instance, const AnalysisCache& cache, ElementIndex e) {
  check_element(instance, e);
  if (!cache.in_ute(e)) return infinite(Method::Formula);
  const ExtendedValue without = best_over(cache, d_minus(instance, e));
  if (!without.is_finite()) return infinite(Method::Formula);
  const Rational& f = cache.optimal_value;
  Rational value;
  switch (instance.objective()) {
    case ObjectiveKind::Sum:
      value = without.value() - f;
      break;
    case ObjectiveKind::Product:
      value = (without.value() - f) / f * instance.cost(e);
      break;
    case ObjectiveKind::Bottleneck:
      value = without.value() - instance.cost(e);
      break;
  }
  return ToleranceResult{ExtendedValue(value), Method::Formula,
                         single_witness(Direction::Increase, e, value)};
}

ToleranceResult single_lower(const Instance& instance, const AnalysisCache& cache, ElementIndex e) {
  check_element(instance, e);
  const Rational& f = cache.optimal_value;
  Rational value;
  switch (instance.objective()) {
    case ObjectiveKind::Sum: {
      const ExtendedValue with = best_over(cache, d_plus(instance, e));
      if (!with.is_finite()) return infinite(Method::Formula);
      value = with.value() - f;
      break;
    }
    case ObjectiveKind::Product: {
      const ExtendedValue with = best_over(cache, d_plus(instance, e));
      // No solution uses e: every decrease short of d_max is admissible.
      value = with.is_finite() ? (with.value() - f) / with.value() * instance.cost(e)
                               : instance.cost(e);
      break;
    }
    case ObjectiveKind::Bottleneck: {
      if (!(smallest_other_max(instance, e) < ExtendedValue(f))) return infinite(Method::Formula);
      value = instance.cost(e) - f;
      break;
    }
  }
  return ToleranceResult{ExtendedValue(value), Method::Formula,
                         single_witness(Direction::Decrease, e, value)};
}

ExtendedValue smallest_other_max(const Instance& instance, ElementIndex e) {
  check_element(instance, e);
  if (instance.objective() != ObjectiveKind::Bottleneck) {
    throw UnsupportedObjective("g(e) is defined for bottleneck instances only");
  }
  ExtendedValue best = ExtendedValue::infinity();
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    if (!instance.contains(s, e)) continue;
    ExtendedValue largest = ExtendedValue::negative_infinity();
    for (ElementIndex other : instance.solution(s)) {
      if (other != e) largest = max(largest, ExtendedValue(instance.cost(other)));
    }
    best = min(best, largest);
  }
  return best;
}

ElementSet normalize_subset(const Instance& instance, ElementSet subset) {
  if (subset.empty()) throw DomainError("tolerance subset E must be nonempty");
  for (ElementIndex e : subset) check_element(instance, e);
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  return subset;
}

ToleranceResult set_upper_regular(const Instance& instance, const AnalysisCache& cache,
                                  const ElementSet& raw_subset, const SearchOptions& options) {
  const ElementSet subset = normalize_subset(instance, raw_subset);
  switch (instance.objective()) {
    case ObjectiveKind::Sum:
      // An element outside every optimum absorbs any increase.
      if (!subset_within_ute(cache, subset)) return infinite(Method::ExactSearch);
      return exact_linear_sup(preservation_rows(instance, cache, subset), cache.optimal_value, subset,
                              Direction::Increase);
    case ObjectiveKind::Product:
      if (!subset_within_ute(cache, subset)) return infinite(Method::NumericSearch);
      return product_upper_regular(instance, cache, subset, options);
    case ObjectiveKind::Bottleneck:
      return bottleneck_upper_regular(instance, cache, subset);
  }
  throw UnsupportedObjective("unknown objective");
}

ToleranceResult set_upper_reverse(const Instance& instance, const AnalysisCache& cache,
                                  const ElementSet& raw_subset, const SearchOptions& options) {
  const ElementSet subset = normalize_subset(instance, raw_subset);
  if (instance.objective() == ObjectiveKind::Product) {
    return product_upper_reverse(instance, cache, subset, options);
  }
  return min_single(subset, [&](ElementIndex e) { return single_upper(instance, cache, e); });
}

ToleranceResult set_lower_regular(const Instance& instance, const AnalysisCache& cache,
                                  const ElementSet& raw_subset, const SearchOptions& options) {
  const ElementSet subset = normalize_subset(instance, raw_subset);
  switch (instance.objective()) {
    case ObjectiveKind::Sum:
      return exact_linear_sup(value_rows(instance, cache, subset), cache.optimal_value, subset,
                              Direction::Decrease);
    case ObjectiveKind::Product:
      return product_lower_regular(instance, cache, subset, options);
    case ObjectiveKind::Bottleneck: {
      ExtendedValue total = 0;
      PerturbationVector witness;
      witness.direction = Direction::Decrease;
      for (ElementIndex e : subset) {
        const ToleranceResult single = single_lower(instance, cache, e);
        total += single.value;
        if (single.value.is_finite()) witness.deltas[e] = single.value.value();
      }
      if (!total.is_finite()) return infinite(Method::Formula);
      return ToleranceResult{total, Method::Formula, std::move(witness)};
    }
  }
  throw UnsupportedObjective("unknown objective");
}

ToleranceResult set_lower_reverse(const Instance& instance, const AnalysisCache& cache,
                                  const ElementSet& raw_subset, const SearchOptions& options) {
  (void)options;
  const ElementSet subset = normalize_subset(instance, raw_subset);
  if (instance.objective() == ObjectiveKind::Bottleneck) {
    return bottleneck_lower_reverse(instance, cache, subset);
  }
  // An element outside every solution cannot lower f(I). Under Product its
  // single lower tolerance is d_max(e) = c(e), which must not enter the
  // minimum; under Sum it is +inf anyway.
  ElementSet used;
  for (ElementIndex e : subset) {
    if (!d_plus(instance, e).empty()) used.push_back(e);
  }
  return min_single(used, [&](ElementIndex e) { return single_lower(instance, cache, e); });
}

ToleranceResult compute_tolerance(const Instance& instance, const AnalysisCache& cache,
                                  ToleranceKind kind, const ElementSet& subset,
                                  const SearchOptions& options) {
  if (is_single_kind(kind)) {
    if (subset.size() != 1) {
      throw DomainError(std::string(to_string(kind)) + " takes exactly one element");
    }
    return kind == ToleranceKind::SingleUpper ? single_upper(instance, cache, subset.front())
                                              : single_lower(instance, cache, subset.front());
  }
  switch (kind) {
    case ToleranceKind::UpperRegular:
      return set_upper_regular(instance, cache, subset, options);
    case ToleranceKind::UpperReverse:
      return set_upper_reverse(instance, cache, subset, options);
    case ToleranceKind::LowerRegular:
      return set_lower_regular(instance, cache, subset, options);
    case ToleranceKind::LowerReverse:
      return set_lower_reverse(instance, cache, subset, options);
    default:
      break;
  }
  throw DomainError("unknown tolerance kind");
}

}  // namespace cotol
