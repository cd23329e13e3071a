#include "cotol/reference.hpp"

#include <algorithm>
#include <set>

#include "cotol/errors.hpp"
#include "fourier_motzkin.hpp"
#include "reference_detail.hpp"

namespace cotol {
namespace reference_detail {

std::vector<Rational> costs_of(const Instance& instance) {
  std::vector<Rational> costs;
  costs.reserve(instance.element_count());
  for (const auto& element : instance.elements()) costs.push_back(element.cost);
  return costs;
}

Landscape score(const Instance& instance, const std::vector<Rational>& costs) {
  Landscape land;
  land.values.reserve(instance.solution_count());
  for (const auto& solution : instance.solutions()) {
    Rational value = costs[solution.front()];
    for (std::size_t i = 1; i < solution.size(); ++i) {
      const Rational& c = costs[solution[i]];
      switch (instance.objective()) {
        case ObjectiveKind::Sum:
          value += c;
          break;
        case ObjectiveKind::Product:
          value *= c;
          break;
        case ObjectiveKind::Bottleneck:
          if (c > value) value = c;
          break;
      }
    }
    land.values.push_back(std::move(value));
  }
  land.optimum = *std::min_element(land.values.begin(), land.values.end());
  land.optimal.reserve(land.values.size());
  for (const auto& value : land.values) land.optimal.push_back(value == land.optimum);
  return land;
}

bool satisfied(Condition condition, const Landscape& original, const Landscape& perturbed) {
  switch (condition) {
    case Condition::PreserveAll:
    case Condition::BreakSome: {
      bool all = true;
      for (std::size_t s = 0; s < original.values.size(); ++s) {
        if (original.optimal[s] && !perturbed.optimal[s]) all = false;
      }
      return condition == Condition::PreserveAll ? all : !all;
    }
    case Condition::ValueKept:
      return perturbed.optimum == original.optimum;
    case Condition::ValueDrops:
      return perturbed.optimum < original.optimum;
  }
  return false;
}

unsigned long grid_denominator(const Rational& precision) {
  if (precision <= 0) throw DomainError("oracle precision must be positive");
  const Rational scaled = Rational(1000) / precision;
  mpz_class ceiling;
  mpz_cdiv_q(ceiling.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (!ceiling.fits_ulong_p()) throw ResourceError("oracle precision is too fine");
  return ceiling.get_ui();
}

}  // namespace reference_detail

namespace {

using namespace reference_detail;

void check_element(const Instance& instance, ElementIndex e) {
  if (e >= instance.element_count()) {
    throw StructuralError("element index " + std::to_string(e) + " out of range");
  }
}

ElementSet checked_subset(const Instance& instance, ElementSet subset, const OracleConfig& config) {
  if (subset.empty()) throw DomainError("tolerance subset E must be nonempty");
  for (ElementIndex e : subset) check_element(instance, e);
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.size() > config.max_subset_size) {
    throw ResourceError("|E| = " + std::to_string(subset.size()) + " exceeds the oracle limit of " +
                        std::to_string(config.max_subset_size));
  }
  return subset;
}

// ---------------------------------------------------------------------------
// Single tolerances: one-parameter scan.
//
// Moving c(e) by t changes each solution's objective piecewise linearly in t,
// so the definition's condition can only switch where two of those pieces
// cross or a bottleneck maximum changes hands. Those points are collected,
// and the condition is tested at every one of them and strictly between
// them; the supremum of the accepted t is then read off exactly.

std::set<Rational> crossing_points(const Instance& instance, ElementIndex e, Direction direction) {
  const std::vector<Rational> costs = costs_of(instance);
  const Landscape land = score(instance, costs);
  const Rational& own = costs[e];
  std::vector<Rational> shifts;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    if (!instance.contains(s, e)) continue;
    for (SolutionIndex other = 0; other < instance.solution_count(); ++other) {
      switch (instance.objective()) {
        case ObjectiveKind::Sum:
          if (!instance.contains(other, e)) shifts.push_back(land.values[other] - land.values[s]);
          break;
        case ObjectiveKind::Product:
          if (!instance.contains(other, e)) {
            shifts.push_back(own * (land.values[other] / land.values[s] - 1));
          }
          break;
        case ObjectiveKind::Bottleneck:
          shifts.push_back(land.values[other] - own);
          break;
      }
    }
    if (instance.objective() == ObjectiveKind::Bottleneck) {
      for (ElementIndex a : instance.solution(s)) {
        if (a != e) shifts.push_back(costs[a] - own);
      }
    }
  }
  std::set<Rational> points;
  for (const Rational& shift : shifts) {
    const Rational t = direction == Direction::Increase ? shift : Rational(-shift);
    if (t <= 0) continue;
    if (direction == Direction::Decrease && instance.objective() == ObjectiveKind::Product &&
        t >= own) {
      continue;
    }
    points.insert(t);
  }
  return points;
}

ExtendedValue scan_single(const Instance& instance, ElementIndex e, Direction direction,
                          Condition condition) {
  check_element(instance, e);
  const std::vector<Rational> costs = costs_of(instance);
  const Landscape original = score(instance, costs);
  auto holds = [&](const Rational& t) {
    std::vector<Rational> moved = costs;
    if (direction == Direction::Increase) {
      moved[e] += t;
    } else {
      moved[e] -= t;
    }
    return satisfied(condition, original, score(instance, moved));
  };

  const std::set<Rational> crossings = crossing_points(instance, e, direction);
  std::vector<Rational> points{Rational(0)};
  points.insert(points.end(), crossings.begin(), crossings.end());

  const bool capped = direction == Direction::Decrease && instance.objective() == ObjectiveKind::Product;
  if (capped) {
    if (holds((points.back() + costs[e]) / 2)) return ExtendedValue(costs[e]);
  } else if (holds(points.back() + 1)) {
    return ExtendedValue::infinity();
  }
  for (std::size_t i = points.size(); i-- > 0;) {
    if (holds(points[i])) return ExtendedValue(points[i]);
    if (i > 0 && holds((points[i - 1] + points[i]) / 2)) return ExtendedValue(points[i]);
  }
  throw DomainError("definition fails for the unperturbed instance");
}

// ---------------------------------------------------------------------------
// Sum set tolerances: Fourier-Motzkin on (alpha_1..alpha_k, z = sum alpha).

struct LinearCondition {
  std::vector<Rational> coef;  // over alpha
  Rational bound;
  bool strict;
};

fm::Range total_range(const std::vector<LinearCondition>& conditions, std::size_t k,
                      const OracleConfig& config) {
  const std::size_t n = k + 1;
  std::vector<fm::Row> rows;
  for (const auto& condition : conditions) {
    fm::Row row{std::vector<Rational>(n, Rational(0)), condition.bound, condition.strict};
    for (std::size_t l = 0; l < k; ++l) row.coef[l] = condition.coef[l];
    rows.push_back(std::move(row));
  }
  for (std::size_t l = 0; l < k; ++l) {
    fm::Row nonneg{std::vector<Rational>(n, Rational(0)), Rational(0), false};
    nonneg.coef[l] = -1;
    rows.push_back(std::move(nonneg));
  }
  fm::Row up{std::vector<Rational>(n, Rational(-1)), Rational(0), false};
  up.coef[k] = 1;
  fm::Row down{std::vector<Rational>(n, Rational(1)), Rational(0), false};
  down.coef[k] = -1;
  rows.push_back(std::move(up));
  rows.push_back(std::move(down));
  return fm::project_onto_last(std::move(rows), n, config.max_elimination_rows);
}

ExtendedValue supremum(const std::vector<LinearCondition>& conditions, std::size_t k,
                       const OracleConfig& config) {
  const fm::Range range = total_range(conditions, k, config);
  if (range.empty) throw DomainError("definition fails for the unperturbed instance");
  if (!range.has_upper) return ExtendedValue::infinity();
  return ExtendedValue(range.upper);
}

// inf over a union of systems, each given by `shared` plus one alternative.
ExtendedValue infimum_over(const std::vector<LinearCondition>& alternatives, std::size_t k,
                           const OracleConfig& config) {
  std::set<std::pair<std::vector<Rational>, Rational>> seen;
  ExtendedValue best = ExtendedValue::infinity();
  for (const auto& alternative : alternatives) {
    if (!seen.insert({alternative.coef, alternative.bound}).second) continue;
    const fm::Range range = total_range({alternative}, k, config);
    if (range.empty) continue;
    best = min(best, ExtendedValue(range.has_lower ? range.lower : Rational(0)));
  }
  return best;
}

std::vector<Rational> indicator(const Instance& instance, SolutionIndex s, const ElementSet& subset) {
  std::vector<Rational> row(subset.size(), Rational(0));
  for (std::size_t l = 0; l < subset.size(); ++l) {
    if (instance.contains(s, subset[l])) row[l] = 1;
  }
  return row;
}

std::vector<Rational> difference(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (std::size_t l = 0; l < a.size(); ++l) out[l] = a[l] - b[l];
  return out;
}

std::vector<Rational> negated(std::vector<Rational> a) {
  for (auto& v : a) v = -v;
  return a;
}

// Pairwise conditions between an optimum S* and any S after changing E.
// Increase: c(S*) + a(S* n E) <= c(S) + a(S n E).
// Decrease: c(S*) - a(S* n E) <= c(S) - a(S n E).
// With `strict_break` the negated (violating) inequality is produced instead.
std::vector<LinearCondition> pair_conditions(const Instance& instance, const ElementSet& subset,
                                             Direction direction, bool strict_break) {
  const Landscape land = score(instance, costs_of(instance));
  std::vector<LinearCondition> conditions;
  for (SolutionIndex star = 0; star < instance.solution_count(); ++star) {
    if (!land.optimal[star]) continue;
    const auto inside = indicator(instance, star, subset);
    for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
      const auto other = indicator(instance, s, subset);
      std::vector<Rational> coef =
          direction == Direction::Increase ? difference(inside, other) : difference(other, inside);
      const Rational bound = land.values[s] - land.values[star];
      if (strict_break) {
        conditions.push_back({negated(std::move(coef)), -bound, true});
      } else {
        conditions.push_back({std::move(coef), bound, false});
      }
    }
  }
  return conditions;
}

// c(S) - a(S n E) >= f(I) for all S, or its violation for one S.
std::vector<LinearCondition> value_conditions(const Instance& instance, const ElementSet& subset,
                                              bool strict_break) {
  const Landscape land = score(instance, costs_of(instance));
  std::vector<LinearCondition> conditions;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    auto coef = indicator(instance, s, subset);
    const Rational bound = land.values[s] - land.optimum;
    if (strict_break) {
      conditions.push_back({negated(std::move(coef)), -bound, true});
    } else {
      conditions.push_back({std::move(coef), bound, false});
    }
  }
  return conditions;
}

bool avoided_by_some_optimum(const Instance& instance, const ElementSet& subset) {
  const Landscape land = score(instance, costs_of(instance));
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    if (!land.optimal[s]) continue;
    if (std::none_of(subset.begin(), subset.end(),
                     [&](ElementIndex e) { return instance.contains(s, e); })) {
      return true;
    }
  }
  return false;
}

}  // namespace

ExtendedValue oracle_single_upper(const Instance& instance, ElementIndex e) {
  return scan_single(instance, e, Direction::Increase, Condition::PreserveAll);
}

ExtendedValue oracle_single_lower(const Instance& instance, ElementIndex e) {
  return scan_single(instance, e, Direction::Decrease, Condition::ValueKept);
}

ExtendedValue oracle_preservation_lower(const Instance& instance, ElementIndex e) {
  return scan_single(instance, e, Direction::Decrease, Condition::PreserveAll);
}

ExtendedValue oracle_value_upper(const Instance& instance, ElementIndex e) {
  return scan_single(instance, e, Direction::Increase, Condition::ValueKept);
}

ExtendedValue oracle_set_tolerance(const Instance& instance, const ElementSet& raw_subset,
                                   ToleranceKind kind, const OracleConfig& config) {
  const ElementSet subset = checked_subset(instance, raw_subset, config);
  if (is_single_kind(kind)) {
    if (subset.size() != 1) throw DomainError("single tolerances take exactly one element");
    return kind == ToleranceKind::SingleUpper ? oracle_single_upper(instance, subset.front())
                                              : oracle_single_lower(instance, subset.front());
  }
  const std::size_t k = subset.size();
  switch (instance.objective()) {
    case ObjectiveKind::Sum:
      switch (kind) {
        case ToleranceKind::UpperRegular:
          return supremum(pair_conditions(instance, subset, Direction::Increase, false), k, config);
        case ToleranceKind::UpperReverse:
          return infimum_over(pair_conditions(instance, subset, Direction::Increase, true), k,
                              config);
        case ToleranceKind::LowerRegular:
          return supremum(value_conditions(instance, subset, false), k, config);
        case ToleranceKind::LowerReverse:
          return infimum_over(value_conditions(instance, subset, true), k, config);
        default:
          break;
      }
      break;
    case ObjectiveKind::Bottleneck:
      switch (kind) {
        case ToleranceKind::UpperRegular:
          return bottleneck_levels(instance, subset, Direction::Increase, Condition::PreserveAll,
                                   config);
        case ToleranceKind::UpperReverse:
          return bottleneck_levels(instance, subset, Direction::Increase, Condition::BreakSome,
                                   config);
        case ToleranceKind::LowerRegular:
          return bottleneck_levels(instance, subset, Direction::Decrease, Condition::ValueKept,
                                   config);
        case ToleranceKind::LowerReverse:
          return bottleneck_levels(instance, subset, Direction::Decrease, Condition::ValueDrops,
                                   config);
        default:
          break;
      }
      break;
    case ObjectiveKind::Product:
      return product_set(instance, subset, kind, false, config);
  }
  throw DomainError("unsupported tolerance kind");
}

ExtendedValue oracle_current_definition(const Instance& instance, const ElementSet& raw_subset,
                                        ToleranceKind kind, const OracleConfig& config) {
  const ElementSet subset = checked_subset(instance, raw_subset, config);
  if (kind == ToleranceKind::SingleLower) {
    if (subset.size() != 1) throw DomainError("single tolerances take exactly one element");
    kind = ToleranceKind::LowerRegular;
  }
  if (kind != ToleranceKind::LowerRegular && kind != ToleranceKind::LowerReverse) {
    throw DomainError("the older semantics are only evaluated for lower tolerances");
  }
  if (!avoided_by_some_optimum(instance, subset)) {
    throw DomainError("every optimal solution meets E; the older lower tolerance is undefined here");
  }
  const bool regular = kind == ToleranceKind::LowerRegular;
  const std::size_t k = subset.size();
  switch (instance.objective()) {
    case ObjectiveKind::Sum:
      return regular
                 ? supremum(pair_conditions(instance, subset, Direction::Decrease, false), k, config)
                 : infimum_over(pair_conditions(instance, subset, Direction::Decrease, true), k,
                                config);
    case ObjectiveKind::Bottleneck:
      return bottleneck_levels(instance, subset, Direction::Decrease,
                               regular ? Condition::PreserveAll : Condition::BreakSome, config);
    case ObjectiveKind::Product:
      return product_set(instance, subset, kind, true, config);
  }
  throw DomainError("unsupported objective");
}

}  // namespace cotol
