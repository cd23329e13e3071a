#include "cotol/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cotol/analysis.hpp"
#include "cotol/errors.hpp"
#include "cotol/generators.hpp"

namespace cotol {
namespace {

constexpr ToleranceKind kSetKinds[] = {ToleranceKind::UpperRegular, ToleranceKind::UpperReverse,
                                       ToleranceKind::LowerRegular, ToleranceKind::LowerReverse};

struct PropertyInfo {
  const char* id;
  const char* statement;
};

// Registration order is report order.
constexpr PropertyInfo kProperties[] = {
    {"optimum-order-under-increase",
     "optimum containing E never beats an optimum not containing E after an increase on E"},
    {"optimum-order-under-decrease",
     "optimum avoiding E never beats an optimum meeting E after a decrease on E"},
    {"upper-regular-monotone", "upper-regular(E minus e) <= upper-regular(E)"},
    {"upper-reverse-monotone", "upper-reverse(E) <= upper-reverse(E minus e)"},
    {"lower-regular-monotone", "lower-regular(E minus e) <= lower-regular(E)"},
    {"lower-reverse-monotone", "lower-reverse(E) <= lower-reverse(E minus e)"},
    {"upper-reverse-le-regular", "upper-reverse(E) <= upper-regular(E)"},
    {"lower-reverse-le-regular",
     "lower-reverse(E) <= lower-regular(E); under product E must meet some solution"},
    {"singleton-collapse", "set tolerances of {e} equal the single tolerances of e"},
    {"single-upper-outside-optima-infinite", "single upper is infinite outside every optimum"},
    {"single-upper-closed-form-fails-outside-optima",
     "the classical single upper closed form is finite for some e outside every optimum"},
    {"upper-regular-ge-max-single", "max single upper over E <= upper-regular(E)"},
    {"upper-regular-sum-bound-gap",
     "sum and product: upper-regular(E) > sum of single uppers on the worked examples"},
    {"bottleneck-upper-regular-superadditive",
     "bottleneck: sum of single uppers over E <= upper-regular(E)"},
    {"upper-regular-le-sum-on-uts",
     "sum and product: upper-regular(E) <= sum of single uppers when E lies in an optimum or "
     "leaves the union of optima"},
    {"upper-reverse-le-min-single", "upper-reverse(E) <= min single upper over E"},
    {"upper-reverse-eq-min-single", "sum and bottleneck: upper-reverse(E) = min single upper"},
    {"product-upper-reverse-root-bound",
     "product: (k-th root(min u(e)/c(e) + 1) - 1) * min c(e) <= upper-reverse(E)"},
    {"lower-consistency-single",
     "e outside some optimum: single lower equals the optimality-preserving value"},
    {"lower-consistency-regular",
     "E avoided by some optimum: lower-regular equals the optimality-preserving value"},
    {"lower-consistency-reverse",
     "E avoided by some optimum: lower-reverse equals the optimality-breaking value"},
    {"single-lower-outside-lte",
     "e in every optimum: single lower is 0 or inf, and 0 under sum and product"},
    {"bottleneck-decrease-floor",
     "bottleneck: perturbed optimum >= min(c*, min over E of c(e) - alpha(e))"},
    {"lower-regular-bounds", "max single lower <= lower-regular(E) <= sum of single lowers"},
    {"bottleneck-lower-regular-eq-sum", "bottleneck: lower-regular(E) = sum of single lowers"},
    {"lower-reverse-le-min-single",
     "lower-reverse(E) <= min single lower; under product over elements in some solution"},
    {"lower-reverse-eq-min-single",
     "sum and product: lower-reverse(E) = min single lower; under product over elements in "
     "some solution"},
    {"product-unused-element-lower-gap",
     "product: an element in no solution has single lower c(e) but reverse lower inf"},
    {"rejected-extended-lower-example",
     "bottleneck example: preserving every optimum would allow decreasing y by 4, while the "
     "value-based single lower is 0"},
    {"rejected-value-upper-example",
     "sum example with two optima: a value-only upper tolerance is inf for every element"},
    {"oracle-single-upper", "single upper formula equals the definition oracle"},
    {"oracle-single-lower", "single lower formula equals the definition oracle"},
    {"oracle-upper-regular", "upper-regular equals the definition oracle"},
    {"oracle-upper-reverse", "upper-reverse equals the definition oracle"},
    {"oracle-lower-regular", "lower-regular equals the definition oracle"},
    {"oracle-lower-reverse", "lower-reverse equals the definition oracle"},
};

std::string oracle_property(ToleranceKind kind) {
  return "oracle-" + std::string(kind == ToleranceKind::SingleUpper   ? "single-upper"
                                 : kind == ToleranceKind::SingleLower ? "single-lower"
                                                                      : to_string(kind));
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += ',';
    out += part;
  }
  return out;
}

class Harness {
 public:
  explicit Harness(const HarnessOptions& options) : options_(options) {
    for (const auto& property : kProperties) {
      index_[property.id] = verdicts_.size();
      verdicts_.push_back({property.id, property.statement, 0, {}});
    }
  }

  void run_instance(const Instance& instance, const std::vector<ElementSet>& subsets);
  void run_counterexample_fixtures();
  void finish_exists_checks();

  std::vector<PropertyVerdict> take() {
    for (auto& verdict : verdicts_) std::sort(verdict.violations.begin(), verdict.violations.end());
    return std::move(verdicts_);
  }

 private:
  struct Context {
    const Instance& instance;
    AnalysisCache cache;
    std::string fingerprint;
    std::map<std::pair<ToleranceKind, ElementSet>, ExtendedValue> memo;
    bool product() const { return instance.objective() == ObjectiveKind::Product; }
  };

  void record(const std::string& id, const Context& ctx, const ElementSet& subset, bool ok,
              const std::function<std::string()>& observed) {
    PropertyVerdict& verdict = verdicts_.at(index_.at(id));
    ++verdict.instances_checked;
    if (ok) return;
    std::vector<std::string> ids;
    for (ElementIndex e : subset) ids.push_back(ctx.instance.id(e));
    verdict.violations.push_back({ctx.fingerprint, ctx.instance.name(), ids, observed()});
  }

  const ExtendedValue& formula(Context& ctx, ToleranceKind kind, const ElementSet& subset) {
    auto key = std::make_pair(kind, subset);
    auto at = ctx.memo.find(key);
    if (at == ctx.memo.end()) {
      at = ctx.memo.emplace(key, options_.paths.compute(ctx.instance, ctx.cache, kind, subset).value)
               .first;
    }
    return at->second;
  }
  const ExtendedValue& single(Context& ctx, ToleranceKind kind, ElementIndex e) {
    return formula(ctx, kind, ElementSet{e});
  }

  bool le(const Context& ctx, const ExtendedValue& a, const ExtendedValue& b) const {
    if (!ctx.product() || !a.is_finite() || !b.is_finite()) return a <= b;
    return a.value() <= b.value() + options_.product_slack;
  }
  bool eq(const Context& ctx, const ExtendedValue& a, const ExtendedValue& b) const {
    if (!ctx.product() || !a.is_finite() || !b.is_finite()) return a == b;
    return abs(a.value() - b.value()) <= options_.product_slack;
  }

  void check_optimum_order(Context& ctx, const ElementSet& subset, std::mt19937_64& rng);
  void check_bottleneck_floor(Context& ctx, const ElementSet& subset, std::mt19937_64& rng);
  void check_upper(Context& ctx, const ElementSet& subset);
  void check_lower(Context& ctx, const ElementSet& subset);
  void check_oracles(Context& ctx, const ElementSet& subset);
  void check_closed_form_failure(Context& ctx);

  const HarnessOptions& options_;
  std::vector<PropertyVerdict> verdicts_;
  std::map<std::string, std::size_t> index_;
  std::size_t closed_form_failures_ = 0;
  std::size_t unused_gaps_ = 0;
};

std::string values(std::initializer_list<std::pair<const char*, ExtendedValue>> items) {
  std::string out;
  for (const auto& [name, value] : items) {
    if (!out.empty()) out += ", ";
    out += std::string(name) + "=" + value.to_string();
  }
  return out;
}

ElementSet without(const ElementSet& subset, ElementIndex e) {
  ElementSet out;
  for (ElementIndex x : subset) {
    if (x != e) out.push_back(x);
  }
  return out;
}

bool used(const Instance& instance, ElementIndex e) { return !d_plus(instance, e).empty(); }

void Harness::check_optimum_order(Context& ctx, const ElementSet& subset, std::mt19937_64& rng) {
  const Instance& instance = ctx.instance;
  auto contains_all = [&](SolutionIndex s) {
    return std::all_of(subset.begin(), subset.end(), [&](ElementIndex e) { return instance.contains(s, e); });
  };
  auto meets = [&](SolutionIndex s) {
    return std::any_of(subset.begin(), subset.end(), [&](ElementIndex e) { return instance.contains(s, e); });
  };

  for (Direction direction : {Direction::Increase, Direction::Decrease}) {
    // Pairs (S1, S2) of optima the ordering claim covers.
    std::vector<std::pair<SolutionIndex, SolutionIndex>> pairs;
    for (SolutionIndex s1 : ctx.cache.optimal_set) {
      const bool s1_side = direction == Direction::Increase ? contains_all(s1) : !meets(s1);
      if (!s1_side) continue;
      for (SolutionIndex s2 : ctx.cache.optimal_set) {
        const bool s2_side = direction == Direction::Increase ? !contains_all(s2) : meets(s2);
        if (s2_side) pairs.emplace_back(s1, s2);
      }
    }
    if (pairs.empty()) continue;

    PerturbationVector vector;
    vector.direction = direction;
    for (ElementIndex e : subset) {
      const auto r = static_cast<long>(bounded(rng, 41));
      if (direction == Direction::Decrease && ctx.product()) {
        vector.deltas[e] = instance.cost(e) * Rational(r, 41);  // stays below c(e)
      } else {
        vector.deltas[e] = Rational(r, 4);
      }
      vector.deltas[e].canonicalize();
    }
    const Instance perturbed = apply_perturbation(instance, vector);
    bool ok = true;
    std::string detail;
    for (const auto& [s1, s2] : pairs) {
      const Rational c1 = objective_value(perturbed, s1);
      const Rational c2 = objective_value(perturbed, s2);
      if (c2 > c1) {
        ok = false;
        detail = "S1 cost " + to_string(c1) + " < S2 cost " + to_string(c2) + ", alpha sum " +
                 to_string(vector.total());
        break;
      }
    }
    record(direction == Direction::Increase ? "optimum-order-under-increase"
                                            : "optimum-order-under-decrease",
           ctx, subset, ok, [&] { return detail; });
  }
}

void Harness::check_bottleneck_floor(Context& ctx, const ElementSet& subset,
                                     std::mt19937_64& rng) {
  const Instance& instance = ctx.instance;
  PerturbationVector vector;
  vector.direction = Direction::Decrease;
  Rational floor = ctx.cache.optimal_value;
  for (ElementIndex e : subset) {
    vector.deltas[e] = Rational(static_cast<long>(bounded(rng, 201)), 4);
    vector.deltas[e].canonicalize();
    floor = std::min(floor, Rational(instance.cost(e) - vector.deltas[e]));
  }
  const Instance perturbed = apply_perturbation(instance, vector);
  Rational best = objective_value(perturbed, SolutionIndex{0});
  for (SolutionIndex s = 1; s < perturbed.solution_count(); ++s) {
    best = std::min(best, objective_value(perturbed, s));
  }
  record("bottleneck-decrease-floor", ctx, subset, best >= floor, [&] {
    return "perturbed optimum " + to_string(best) + " below floor " + to_string(floor);
  });
}

void Harness::check_upper(Context& ctx, const ElementSet& subset) {
  const ObjectiveKind objective = ctx.instance.objective();
  const ExtendedValue& regular = formula(ctx, ToleranceKind::UpperRegular, subset);
  const ExtendedValue& reverse = formula(ctx, ToleranceKind::UpperReverse, subset);

  ExtendedValue max_single = 0;
  ExtendedValue sum_single = 0;
  ExtendedValue min_single = ExtendedValue::infinity();
  for (ElementIndex e : subset) {
    const ExtendedValue& u = single(ctx, ToleranceKind::SingleUpper, e);
    max_single = max(max_single, u);
    sum_single += u;
    min_single = min(min_single, u);
  }

  if (subset.size() > 1) {
    for (ElementIndex e : subset) {
      const ElementSet smaller = without(subset, e);
      const ExtendedValue& small_regular = formula(ctx, ToleranceKind::UpperRegular, smaller);
      const ExtendedValue& small_reverse = formula(ctx, ToleranceKind::UpperReverse, smaller);
      record("upper-regular-monotone", ctx, subset, le(ctx, small_regular, regular), [&] {
        return values({{"smaller", small_regular}, {"full", regular}});
      });
      record("upper-reverse-monotone", ctx, subset, le(ctx, reverse, small_reverse), [&] {
        return values({{"full", reverse}, {"smaller", small_reverse}});
      });
    }
  }
  record("upper-reverse-le-regular", ctx, subset, le(ctx, reverse, regular),
         [&] { return values({{"reverse", reverse}, {"regular", regular}}); });
  record("upper-regular-ge-max-single", ctx, subset, le(ctx, max_single, regular),
         [&] { return values({{"max single", max_single}, {"regular", regular}}); });
  record("upper-reverse-le-min-single", ctx, subset, le(ctx, reverse, min_single),
         [&] { return values({{"reverse", reverse}, {"min single", min_single}}); });

  for (ElementIndex e : subset) {
    if (ctx.cache.in_ute(e)) continue;
    const ExtendedValue& u = single(ctx, ToleranceKind::SingleUpper, e);
    record("single-upper-outside-optima-infinite", ctx, {e}, u.is_infinite(),
           [&] { return values({{"single upper", u}}); });
  }

  if (objective == ObjectiveKind::Bottleneck) {
    record("bottleneck-upper-regular-superadditive", ctx, subset, le(ctx, sum_single, regular),
           [&] { return values({{"sum single", sum_single}, {"regular", regular}}); });
  } else {
    const bool leaves_union = std::any_of(subset.begin(), subset.end(),
                                          [&](ElementIndex e) { return !ctx.cache.in_ute(e); });
    if (leaves_union || in_uts(ctx.instance, ctx.cache, subset)) {
      record("upper-regular-le-sum-on-uts", ctx, subset, le(ctx, regular, sum_single),
             [&] { return values({{"regular", regular}, {"sum single", sum_single}}); });
    }
  }

  if (objective != ObjectiveKind::Product) {
    record("upper-reverse-eq-min-single", ctx, subset, eq(ctx, reverse, min_single),
           [&] { return values({{"reverse", reverse}, {"min single", min_single}}); });
  } else {
    // (k-th root(min u/c + 1) - 1) * min c, evaluated in floating point.
    Real ratio = INFINITY;
    Real min_cost = INFINITY;
    for (ElementIndex e : subset) {
      const ExtendedValue& u = single(ctx, ToleranceKind::SingleUpper, e);
      if (u.is_finite()) ratio = std::min(ratio, to_real(u.value()) / to_real(ctx.instance.cost(e)));
      min_cost = std::min(min_cost, to_real(ctx.instance.cost(e)));
    }
    bool ok = true;
    Real bound = 0;
    if (std::isinf(ratio)) {
      ok = reverse.is_infinite();
    } else {
      bound = (std::pow(ratio + 1, 1.0L / static_cast<Real>(subset.size())) - 1) * min_cost;
      ok = reverse.is_infinite() ||
           bound <= reverse.to_real() + to_real(options_.product_slack);
    }
    record("product-upper-reverse-root-bound", ctx, subset, ok, [&] {
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.9Lg", bound);
      return "bound=" + std::string(buffer) + ", " + values({{"reverse", reverse}});
    });
  }
}

void Harness::check_lower(Context& ctx, const ElementSet& subset) {
  const Instance& instance = ctx.instance;
  const ObjectiveKind objective = instance.objective();
  const ExtendedValue& regular = formula(ctx, ToleranceKind::LowerRegular, subset);
  const ExtendedValue& reverse = formula(ctx, ToleranceKind::LowerReverse, subset);

  ExtendedValue max_single = 0;
  ExtendedValue sum_single = 0;
  ExtendedValue min_single = ExtendedValue::infinity();       // over all of E
  ExtendedValue min_used_single = ExtendedValue::infinity();  // over elements in some solution
  bool any_used = false;
  for (ElementIndex e : subset) {
    const ExtendedValue& l = single(ctx, ToleranceKind::SingleLower, e);
    max_single = max(max_single, l);
    sum_single += l;
    min_single = min(min_single, l);
    if (used(instance, e)) {
      any_used = true;
      min_used_single = min(min_used_single, l);
    }
  }
  // Under product an unused element's single lower is c(e) while it can never
  // lower f(I); the min-equalities only hold over used elements.
  const ExtendedValue& reverse_reference = ctx.product() ? min_used_single : min_single;

  if (subset.size() > 1) {
    for (ElementIndex e : subset) {
      const ElementSet smaller = without(subset, e);
      const ExtendedValue& small_regular = formula(ctx, ToleranceKind::LowerRegular, smaller);
      const ExtendedValue& small_reverse = formula(ctx, ToleranceKind::LowerReverse, smaller);
      record("lower-regular-monotone", ctx, subset, le(ctx, small_regular, regular), [&] {
        return values({{"smaller", small_regular}, {"full", regular}});
      });
      record("lower-reverse-monotone", ctx, subset, le(ctx, reverse, small_reverse), [&] {
        return values({{"full", reverse}, {"smaller", small_reverse}});
      });
    }
  }
  if (!ctx.product() || any_used) {
    record("lower-reverse-le-regular", ctx, subset, le(ctx, reverse, regular),
           [&] { return values({{"reverse", reverse}, {"regular", regular}}); });
  }
  record("lower-regular-bounds", ctx, subset,
         le(ctx, max_single, regular) && le(ctx, regular, sum_single), [&] {
           return values({{"max single", max_single}, {"regular", regular}, {"sum single", sum_single}});
         });
  record("lower-reverse-le-min-single", ctx, subset, le(ctx, reverse, reverse_reference),
         [&] { return values({{"reverse", reverse}, {"min single", reverse_reference}}); });
  if (objective == ObjectiveKind::Bottleneck) {
    record("bottleneck-lower-regular-eq-sum", ctx, subset, eq(ctx, regular, sum_single),
           [&] { return values({{"regular", regular}, {"sum single", sum_single}}); });
  } else {
    record("lower-reverse-eq-min-single", ctx, subset, eq(ctx, reverse, reverse_reference),
           [&] { return values({{"reverse", reverse}, {"min single", reverse_reference}}); });
  }

  for (ElementIndex e : subset) {
    const ExtendedValue& l = single(ctx, ToleranceKind::SingleLower, e);
    if (!ctx.cache.in_lte(e)) {
      const bool ok = objective == ObjectiveKind::Bottleneck ? (l == 0 || l.is_infinite()) : l == 0;
      record("single-lower-outside-lte", ctx, {e}, ok, [&] { return values({{"single lower", l}}); });
    }
    if (ctx.product() && !used(instance, e)) {
      const ExtendedValue& singleton_reverse = formula(ctx, ToleranceKind::LowerReverse, {e});
      const bool ok = l == ExtendedValue(instance.cost(e)) && singleton_reverse.is_infinite();
      if (ok) ++unused_gaps_;
      record("product-unused-element-lower-gap", ctx, {e}, ok, [&] {
        return values({{"single lower", l}, {"reverse lower {e}", singleton_reverse}});
      });
    }
  }
}

void Harness::check_oracles(Context& ctx, const ElementSet& subset) {
  const Instance& instance = ctx.instance;
  for (ElementIndex e : subset) {
    for (ToleranceKind kind : {ToleranceKind::SingleUpper, ToleranceKind::SingleLower}) {
      const ExtendedValue& value = single(ctx, kind, e);
      const ExtendedValue oracle = kind == ToleranceKind::SingleUpper
                                       ? oracle_single_upper(instance, e)
                                       : oracle_single_lower(instance, e);
      record(oracle_property(kind), ctx, {e}, eq(ctx, value, oracle),
             [&] { return values({{"formula", value}, {"oracle", oracle}}); });
    }
  }
  for (ToleranceKind kind : kSetKinds) {
    const ExtendedValue& value = formula(ctx, kind, subset);
    const ExtendedValue oracle = oracle_set_tolerance(instance, subset, kind, options_.oracle);
    record(oracle_property(kind), ctx, subset, eq(ctx, value, oracle),
           [&] { return values({{"formula", value}, {"oracle", oracle}}); });
  }
}

void Harness::check_closed_form_failure(Context& ctx) {
  const Instance& instance = ctx.instance;
  for (ElementIndex e = 0; e < instance.element_count(); ++e) {
    if (ctx.cache.in_ute(e)) continue;
    const std::vector<SolutionIndex> avoiding = d_minus(instance, e);
    const ExtendedValue best = best_cost_over(instance, avoiding);
    PropertyVerdict& verdict = verdicts_.at(index_.at("single-upper-closed-form-fails-outside-optima"));
    ++verdict.instances_checked;
    // Each closed form is finite exactly when some solution avoids e.
    if (best.is_finite() && single(ctx, ToleranceKind::SingleUpper, e).is_infinite()) {
      ++closed_form_failures_;
    }
  }
}

void Harness::run_instance(const Instance& instance, const std::vector<ElementSet>& subsets) {
  Context ctx{instance, analyze(instance), instance_fingerprint(instance), {}};
  std::mt19937_64 rng(fnv1a(ctx.fingerprint));
  check_closed_form_failure(ctx);
  for (const ElementSet& raw : subsets) {
    const ElementSet subset = normalize_subset(instance, raw);
    check_optimum_order(ctx, subset, rng);
    if (instance.objective() == ObjectiveKind::Bottleneck) check_bottleneck_floor(ctx, subset, rng);
    check_upper(ctx, subset);
    check_lower(ctx, subset);

    for (ElementIndex e : subset) {
      const ElementSet singleton{e};
      const ExtendedValue& u = single(ctx, ToleranceKind::SingleUpper, e);
      const ExtendedValue& l = single(ctx, ToleranceKind::SingleLower, e);
      const ExtendedValue& ur = formula(ctx, ToleranceKind::UpperRegular, singleton);
      const ExtendedValue& uv = formula(ctx, ToleranceKind::UpperReverse, singleton);
      const ExtendedValue& lr = formula(ctx, ToleranceKind::LowerRegular, singleton);
      const ExtendedValue& lv = formula(ctx, ToleranceKind::LowerReverse, singleton);
      // The product reverse lower of an unused element is the documented exception.
      const bool reverse_lower_applies = !ctx.product() || used(instance, e);
      const bool ok = eq(ctx, ur, u) && eq(ctx, uv, u) && eq(ctx, lr, l) &&
                      (!reverse_lower_applies || eq(ctx, lv, l));
      record("singleton-collapse", ctx, singleton, ok, [&] {
        return values({{"upper", u}, {"upper-regular", ur}, {"upper-reverse", uv}, {"lower", l},
                       {"lower-regular", lr}, {"lower-reverse", lv}});
      });
    }

    // Older optimal-solution semantics, defined when some optimum avoids E.
    for (ElementIndex e : subset) {
      if (!ctx.cache.in_lte(e)) continue;
      const ExtendedValue& value = single(ctx, ToleranceKind::SingleLower, e);
      const ExtendedValue current =
          oracle_current_definition(instance, {e}, ToleranceKind::SingleLower, options_.oracle);
      record("lower-consistency-single", ctx, {e}, eq(ctx, value, current),
             [&] { return values({{"formula", value}, {"current definition", current}}); });
    }
    if (in_lts(instance, ctx.cache, subset)) {
      for (ToleranceKind kind : {ToleranceKind::LowerRegular, ToleranceKind::LowerReverse}) {
        const ExtendedValue& value = formula(ctx, kind, subset);
        const ExtendedValue current = oracle_current_definition(instance, subset, kind, options_.oracle);
        record(kind == ToleranceKind::LowerRegular ? "lower-consistency-regular"
                                                   : "lower-consistency-reverse",
               ctx, subset, eq(ctx, value, current),
               [&] { return values({{"formula", value}, {"current definition", current}}); });
      }
    }

    if (options_.oracle_checks) check_oracles(ctx, subset);
  }
}

Instance unused_element_fixture() {
  return Instance({{"a", Rational(2)}, {"b", Rational(3)}, {"u", Rational(5)}},
                  std::vector<std::vector<std::string>>{{"a"}, {"b"}}, ObjectiveKind::Product,
                  "unused-element");
}

void Harness::run_counterexample_fixtures() {
  // Regular set upper exceeds the sum of single uppers.
  for (const char* name : {"examp2", "examp3"}) {
    const Instance instance = worked_example(name);
    Context ctx{instance, analyze(instance), instance_fingerprint(instance), {}};
    const ElementSet subset = instance.resolve({"v", "w"});
    const ExtendedValue& regular = formula(ctx, ToleranceKind::UpperRegular, subset);
    ExtendedValue sum_single = 0;
    for (ElementIndex e : subset) sum_single += single(ctx, ToleranceKind::SingleUpper, e);
    const bool gap = sum_single.is_finite() && regular > sum_single &&
                     !le(ctx, regular, sum_single);
    record("upper-regular-sum-bound-gap", ctx, subset, gap,
           [&] { return values({{"regular", regular}, {"sum single", sum_single}}); });
  }

  {
    const Instance instance = worked_example("examp4");
    Context ctx{instance, analyze(instance), instance_fingerprint(instance), {}};
    const ElementIndex y = instance.index_of("y");
    const ExtendedValue rejected = oracle_preservation_lower(instance, y);
    const ExtendedValue& lower = single(ctx, ToleranceKind::SingleLower, y);
    const ExtendedValue g = smallest_other_max(instance, y);
    record("rejected-extended-lower-example", ctx, {y},
           rejected == ExtendedValue(4) && lower == ExtendedValue(0) && g == ExtendedValue(2),
           [&] { return values({{"preservation lower", rejected}, {"single lower", lower}, {"g", g}}); });
  }

  {
    const Instance instance = worked_example("examp2");
    Context ctx{instance, analyze(instance), instance_fingerprint(instance), {}};
    for (ElementIndex e = 0; e < instance.element_count(); ++e) {
      const ExtendedValue value_only = oracle_value_upper(instance, e);
      const ExtendedValue& upper = single(ctx, ToleranceKind::SingleUpper, e);
      // Informative only where the real upper tolerance is finite.
      record("rejected-value-upper-example", ctx, {e}, value_only.is_infinite(),
             [&] { return values({{"value-only upper", value_only}, {"single upper", upper}}); });
    }
  }

  {
    const Instance instance = unused_element_fixture();
    run_instance(instance, {{instance.index_of("u")}, {instance.index_of("a"), instance.index_of("u")}});
  }

  for (const Instance& instance : worked_examples()) {
    Context ctx{instance, analyze(instance), instance_fingerprint(instance), {}};
    check_closed_form_failure(ctx);
  }
}

void Harness::finish_exists_checks() {
  // Existence claims fail only when no instance exhibited them at all.
  auto require = [&](const char* id, std::size_t found, const char* what) {
    PropertyVerdict& verdict = verdicts_.at(index_.at(id));
    if (verdict.instances_checked > 0 && found == 0) {
      verdict.violations.push_back({"", "", {}, what});
    }
  };
  require("single-upper-closed-form-fails-outside-optima", closed_form_failures_,
          "no element outside the optima had a finite closed form");
  require("product-unused-element-lower-gap", unused_gaps_, "no unused product element observed");
}

}  // namespace

std::string instance_fingerprint(const Instance& instance) {
  std::ostringstream text;
  text << to_string(instance.objective()) << '|';
  for (const Element& element : instance.elements()) {
    text << element.id << ':' << to_string(element.cost) << ';';
  }
  std::vector<std::vector<std::string>> family;
  for (const ElementSet& solution : instance.solutions()) {
    std::vector<std::string> ids;
    for (ElementIndex e : solution) ids.push_back(instance.id(e));
    std::sort(ids.begin(), ids.end());
    family.push_back(std::move(ids));
  }
  std::sort(family.begin(), family.end());
  for (const auto& ids : family) text << '|' << join(ids);
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(fnv1a(text.str())));
  return buffer;
}

std::vector<ElementSet> sample_subsets(const Instance& instance, const AnalysisCache& cache,
                                       std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ fnv1a(instance_fingerprint(instance)));
  const std::size_t n = instance.element_count();
  std::vector<ElementSet> out;
  for (std::size_t i = 0; i < count; ++i) {
    // 0: unrestricted, 1: inside an optimum, 2: avoiding an optimum.
    const auto mode = bounded(rng, 3);
    ElementSet pool;
    if (mode == 0) {
      for (ElementIndex e = 0; e < n; ++e) pool.push_back(e);
    } else {
      const SolutionIndex s = cache.optimal_set[bounded(rng, cache.optimal_set.size())];
      for (ElementIndex e = 0; e < n; ++e) {
        if (instance.contains(s, e) == (mode == 1)) pool.push_back(e);
      }
      if (pool.empty()) {
        for (ElementIndex e = 0; e < n; ++e) pool.push_back(e);
      }
    }
    const std::size_t size = std::min<std::size_t>(1 + bounded(rng, 4), pool.size());
    // Partial Fisher-Yates.
    for (std::size_t j = 0; j < size; ++j) {
      std::swap(pool[j], pool[j + bounded(rng, pool.size() - j)]);
    }
    ElementSet subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(subset.begin(), subset.end());
    out.push_back(std::move(subset));
  }
  return out;
}

std::vector<PropertyVerdict> check_subsets(const std::vector<Instance>& instances,
                                           const std::vector<std::vector<ElementSet>>& subsets,
                                           const HarnessOptions& options) {
  if (subsets.size() != instances.size()) {
    throw DomainError("check_subsets needs one subset list per instance");
  }
  Harness harness(options);
  for (std::size_t i = 0; i < instances.size(); ++i) harness.run_instance(instances[i], subsets[i]);
  if (options.counterexample_fixtures) harness.run_counterexample_fixtures();
  harness.finish_exists_checks();
  return harness.take();
}

std::vector<PropertyVerdict> check_all(const std::vector<Instance>& instances,
                                       std::size_t subsets_per_instance, std::uint64_t seed,
                                       const HarnessOptions& options) {
  std::vector<std::vector<ElementSet>> subsets;
  subsets.reserve(instances.size());
  for (const Instance& instance : instances) {
    subsets.push_back(sample_subsets(instance, analyze(instance), subsets_per_instance, seed));
  }
  return check_subsets(instances, subsets, options);
}

bool all_passed(const std::vector<PropertyVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const PropertyVerdict& verdict) { return verdict.passed(); });
}

}  // namespace cotol
