#include "cotol/analysis.hpp"

#include <algorithm>

#include "cotol/errors.hpp"

namespace cotol {
namespace {

void check_element(const Instance& instance, ElementIndex e) {
  if (e >= instance.element_count()) {
    throw StructuralError("element index " + std::to_string(e) + " out of range");
  }
}

}  // namespace

bool AnalysisCache::in_ute(ElementIndex e) const {
  return std::binary_search(ute.begin(), ute.end(), e);
}

bool AnalysisCache::in_lte(ElementIndex e) const {
  return std::binary_search(lte.begin(), lte.end(), e);
}

bool AnalysisCache::is_optimal(SolutionIndex s) const {
  return solution_costs.at(s) == optimal_value;
}

AnalysisCache analyze(const Instance& instance) {
  AnalysisCache cache;
  cache.solution_costs.reserve(instance.solution_count());
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    cache.solution_costs.push_back(objective_value(instance, s));
  }
  cache.optimal_value =
      *std::min_element(cache.solution_costs.begin(), cache.solution_costs.end());

  const std::size_t n = instance.element_count();
  std::vector<int> hits(n, 0);
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    if (cache.solution_costs[s] != cache.optimal_value) continue;
    cache.optimal_set.push_back(s);
    for (ElementIndex e : instance.solution(s)) ++hits[e];
  }
  const int optima = static_cast<int>(cache.optimal_set.size());
  for (ElementIndex e = 0; e < n; ++e) {
    if (hits[e] > 0) cache.ute.push_back(e);
    if (hits[e] < optima) cache.lte.push_back(e);
  }
  return cache;
}

std::vector<SolutionIndex> d_plus(const Instance& instance, ElementIndex e) {
  check_element(instance, e);
  std::vector<SolutionIndex> family;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    if (instance.contains(s, e)) family.push_back(s);
  }
  return family;
}

std::vector<SolutionIndex> d_minus(const Instance& instance, ElementIndex e) {
  check_element(instance, e);
  std::vector<SolutionIndex> family;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    if (!instance.contains(s, e)) family.push_back(s);
  }
  return family;
}

bool in_uts(const Instance& instance, const AnalysisCache& cache, const ElementSet& subset) {
  for (ElementIndex e : subset) check_element(instance, e);
  return std::any_of(cache.optimal_set.begin(), cache.optimal_set.end(), [&](SolutionIndex s) {
    return std::all_of(subset.begin(), subset.end(),
                       [&](ElementIndex e) { return instance.contains(s, e); });
  });
}

bool in_lts(const Instance& instance, const AnalysisCache& cache, const ElementSet& subset) {
  for (ElementIndex e : subset) check_element(instance, e);
  return std::any_of(cache.optimal_set.begin(), cache.optimal_set.end(), [&](SolutionIndex s) {
    return std::none_of(subset.begin(), subset.end(),
                        [&](ElementIndex e) { return instance.contains(s, e); });
  });
}

}  // namespace cotol
