// Randomised invariants with hand-rolled generators.

#include <doctest.h>

#include <algorithm>
#include <random>

#include "cotol/generators.hpp"
#include "cotol/reference.hpp"
#include "cotol/tolerance.hpp"

using namespace cotol;

namespace {

// Same instance with elements and solutions listed in a shuffled order.
Instance shuffled(const Instance& instance, std::mt19937_64& rng) {
  std::vector<Element> elements = instance.elements();
  for (std::size_t i = elements.size(); i > 1; --i) std::swap(elements[i - 1], elements[bounded(rng, i)]);
  std::vector<std::vector<std::string>> solutions;
  for (const ElementSet& solution : instance.solutions()) {
    std::vector<std::string> ids;
    for (ElementIndex e : solution) ids.push_back(instance.id(e));
    for (std::size_t i = ids.size(); i > 1; --i) std::swap(ids[i - 1], ids[bounded(rng, i)]);
    solutions.push_back(std::move(ids));
  }
  for (std::size_t i = solutions.size(); i > 1; --i) std::swap(solutions[i - 1], solutions[bounded(rng, i)]);
  return Instance(std::move(elements), solutions, instance.objective(), instance.name());
}

std::vector<std::string> random_ids(const Instance& instance, std::mt19937_64& rng) {
  std::vector<std::string> ids;
  const std::size_t size = 1 + bounded(rng, std::min<std::size_t>(3, instance.element_count()));
  while (ids.size() < size) {
    const std::string& id = instance.id(bounded(rng, instance.element_count()));
    if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  }
  return ids;
}

constexpr ToleranceKind kSetKinds[] = {ToleranceKind::UpperRegular, ToleranceKind::UpperReverse,
                                       ToleranceKind::LowerRegular, ToleranceKind::LowerReverse};

}  // namespace

TEST_CASE("formula and oracle values do not depend on declaration order") {
  std::mt19937_64 rng(2024);
  for (ObjectiveKind objective : {ObjectiveKind::Sum, ObjectiveKind::Product, ObjectiveKind::Bottleneck}) {
    for (const Instance& instance : random_suite(objective, 12, 300, 6)) {
      const Instance other = shuffled(instance, rng);
      const AnalysisCache cache = analyze(instance);
      const AnalysisCache other_cache = analyze(other);
      for (int round = 0; round < 2; ++round) {
        const auto ids = random_ids(instance, rng);
        const ElementSet a = instance.resolve(ids);
        const ElementSet b = other.resolve(ids);
        for (ToleranceKind kind : kSetKinds) {
          INFO(instance.name() << " " << to_string(kind));
          CHECK(compute_tolerance(instance, cache, kind, a).value ==
                compute_tolerance(other, other_cache, kind, b).value);
          CHECK(oracle_set_tolerance(instance, a, kind) == oracle_set_tolerance(other, b, kind));
        }
        const ElementIndex e = instance.index_of(ids.front());
        const ElementIndex f = other.index_of(ids.front());
        CHECK(oracle_single_upper(instance, e) == oracle_single_upper(other, f));
        CHECK(oracle_single_lower(instance, e) == oracle_single_lower(other, f));
      }
    }
  }
}

TEST_CASE("perturbing by the witness keeps the defining condition") {
  // Regular upper witnesses keep every optimum optimal; regular lower
  // witnesses keep the optimal value.
  std::mt19937_64 rng(99);
  for (ObjectiveKind objective : {ObjectiveKind::Sum, ObjectiveKind::Bottleneck}) {
    for (const Instance& instance : random_suite(objective, 30, 40, 5)) {
      const AnalysisCache cache = analyze(instance);
      const ElementSet subset = instance.resolve(random_ids(instance, rng));
      for (ToleranceKind kind : {ToleranceKind::UpperRegular, ToleranceKind::LowerRegular}) {
        const ToleranceResult result = compute_tolerance(instance, cache, kind, subset);
        if (!result.witness) continue;
        const Instance perturbed = apply_perturbation(instance, *result.witness);
        const AnalysisCache after = analyze(perturbed);
        INFO(instance.name() << " " << to_string(kind));
        if (kind == ToleranceKind::UpperRegular) {
          for (SolutionIndex s : cache.optimal_set) CHECK(after.is_optimal(s));
          CHECK(result.witness->total() == result.value.value());
        } else {
          CHECK(after.optimal_value == cache.optimal_value);
        }
      }
    }
  }
}

TEST_CASE("scaling every cost scales sum tolerances") {
  for (const Instance& instance : random_suite(ObjectiveKind::Sum, 20, 500, 9)) {
    std::vector<Element> scaled = instance.elements();
    for (Element& element : scaled) element.cost *= 3;
    const Instance big(std::move(scaled), instance.solutions(), instance.objective());
    const AnalysisCache cache = analyze(instance);
    const AnalysisCache big_cache = analyze(big);
    const ElementSet subset{0, instance.element_count() - 1};
    for (ToleranceKind kind : kSetKinds) {
      const ExtendedValue small = compute_tolerance(instance, cache, kind, normalize_subset(instance, subset)).value;
      const ExtendedValue large = compute_tolerance(big, big_cache, kind, normalize_subset(big, subset)).value;
      if (small.is_finite()) {
        CHECK(large == ExtendedValue(Rational(small.value() * 3)));
      } else {
        CHECK(large.is_infinite());
      }
    }
  }
}
