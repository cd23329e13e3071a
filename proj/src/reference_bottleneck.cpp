// Bottleneck set oracle.
//
// A perturbed bottleneck instance is determined, up to the value of the
// total change, by where each perturbed cost p_l sits relative to the fixed
// cost levels and to the other perturbed costs. Every such arrangement is
// enumerated: p_l either equals a level or lies strictly inside a gap, and
// perturbed costs sharing a gap are ordered in every weak order. The
// definition is tested on one representative point per arrangement, and the
// closure of the arrangement gives the sup / inf of the total change.

#include <algorithm>
#include <map>
#include <optional>

#include "cotol/errors.hpp"
#include "reference_detail.hpp"

namespace cotol::reference_detail {
namespace {

struct SolutionClass {
  std::optional<Rational> base;  // largest cost outside E; none when S is inside E
  std::vector<std::size_t> members;  // positions in E
  bool optimal = false;
};

// All weak orders of m items as rank vectors with ranks 0..r-1 all used.
std::vector<std::vector<int>> weak_orders(std::size_t m) {
  std::vector<std::vector<int>> orders;
  std::vector<int> rank(m, 0);
  for (;;) {
    int top = -1;
    for (int r : rank) top = std::max(top, r);
    bool onto = true;
    for (int r = 0; r <= top && onto; ++r) onto = std::find(rank.begin(), rank.end(), r) != rank.end();
    if (onto) orders.push_back(rank);
    std::size_t i = 0;
    while (i < m && rank[i] == static_cast<int>(m) - 1) rank[i++] = 0;
    if (i == m) break;
    ++rank[i];
  }
  return orders;
}

}  // namespace

ExtendedValue bottleneck_levels(const Instance& instance, const ElementSet& subset,
                                Direction direction, Condition condition,
                                const OracleConfig& config) {
  const std::size_t k = subset.size();
  const std::vector<Rational> costs = costs_of(instance);
  const Landscape original = score(instance, costs);

  std::map<std::pair<std::optional<Rational>, std::vector<std::size_t>>, bool> grouped;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    std::optional<Rational> base;
    std::vector<std::size_t> members;
    for (ElementIndex e : instance.solution(s)) {
      const auto at = std::lower_bound(subset.begin(), subset.end(), e);
      if (at != subset.end() && *at == e) {
        members.push_back(static_cast<std::size_t>(at - subset.begin()));
      } else if (!base || costs[e] > *base) {
        base = costs[e];
      }
    }
    grouped[{base, members}] = original.optimal[s];
  }
  std::vector<SolutionClass> classes;
  for (const auto& [key, optimal] : grouped) classes.push_back({key.first, key.second, optimal});

  std::vector<Rational> levels = costs;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  const std::size_t top_position = 2 * levels.size();  // positions 0..2L, odd = level

  std::vector<std::size_t> lowest(k);
  std::vector<std::size_t> highest(k);
  double assignments = 1;
  for (std::size_t l = 0; l < k; ++l) {
    const auto level = static_cast<std::size_t>(
        std::lower_bound(levels.begin(), levels.end(), costs[subset[l]]) - levels.begin());
    const std::size_t own = 2 * level + 1;
    lowest[l] = direction == Direction::Increase ? own : 0;
    highest[l] = direction == Direction::Increase ? top_position : own;
    assignments *= static_cast<double>(highest[l] - lowest[l] + 1);
  }
  if (assignments > static_cast<double>(config.max_level_assignments)) {
    throw ResourceError("bottleneck level enumeration needs more than " +
                        std::to_string(config.max_level_assignments) + " assignments");
  }

  const bool want_sup = condition == Condition::PreserveAll || condition == Condition::ValueKept;
  std::optional<ExtendedValue> best;

  // Closure bound of one arrangement's total change.
  auto bound_of = [&](const std::vector<std::size_t>& position) {
    ExtendedValue total = 0;
    for (std::size_t l = 0; l < k; ++l) {
      const Rational& own = costs[subset[l]];
      const std::size_t pos = position[l];
      if (pos % 2 == 1) {
        const Rational& level = levels[pos / 2];
        total += ExtendedValue(direction == Direction::Increase ? level - own : own - level);
        continue;
      }
      const std::size_t gap = pos / 2;  // between levels[gap-1] and levels[gap]
      const bool towards_upper = (direction == Direction::Increase) == want_sup;
      if (towards_upper) {
        if (gap == levels.size()) return ExtendedValue::infinity();
        total += ExtendedValue(direction == Direction::Increase ? levels[gap] - own
                                                                : own - levels[gap]);
      } else {
        if (gap == 0) return ExtendedValue::infinity();
        total += ExtendedValue(direction == Direction::Increase ? levels[gap - 1] - own
                                                                : own - levels[gap - 1]);
      }
    }
    return total;
  };

  auto holds_somewhere = [&](const std::vector<std::size_t>& position) {
    std::map<std::size_t, std::vector<std::size_t>> by_gap;
    std::vector<Rational> p(k);
    for (std::size_t l = 0; l < k; ++l) {
      if (position[l] % 2 == 1) {
        p[l] = levels[position[l] / 2];
      } else {
        by_gap[position[l] / 2].push_back(l);
      }
    }
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> gaps(by_gap.begin(), by_gap.end());
    std::vector<std::vector<std::vector<int>>> orders;
    for (const auto& [gap, members] : gaps) orders.push_back(weak_orders(members.size()));

    std::vector<std::size_t> choice(gaps.size(), 0);
    for (;;) {
      for (std::size_t g = 0; g < gaps.size(); ++g) {
        const auto& [gap, members] = gaps[g];
        const auto& rank = orders[g][choice[g]];
        const int ranks = 1 + *std::max_element(rank.begin(), rank.end());
        for (std::size_t i = 0; i < members.size(); ++i) {
          const int r = rank[i];
          if (gap == 0) {
            p[members[i]] = levels.front() - Rational(ranks - r);
          } else if (gap == levels.size()) {
            p[members[i]] = levels.back() + Rational(r + 1);
          } else {
            const Rational& a = levels[gap - 1];
            const Rational& b = levels[gap];
            p[members[i]] = a + (b - a) * Rational(r + 1) / Rational(ranks + 1);
          }
        }
      }
      std::vector<Rational> values;
      values.reserve(classes.size());
      for (const auto& solution_class : classes) {
        std::optional<Rational> value = solution_class.base;
        for (std::size_t l : solution_class.members) {
          if (!value || p[l] > *value) value = p[l];
        }
        values.push_back(*value);
      }
      const Rational lowest_value = *std::min_element(values.begin(), values.end());
      bool ok = false;
      switch (condition) {
        case Condition::PreserveAll:
          ok = true;
          for (std::size_t c = 0; c < classes.size(); ++c) {
            if (classes[c].optimal && values[c] != lowest_value) ok = false;
          }
          break;
        case Condition::BreakSome:
          for (std::size_t c = 0; c < classes.size(); ++c) {
            if (classes[c].optimal && values[c] != lowest_value) ok = true;
          }
          break;
        case Condition::ValueKept:
          ok = lowest_value == original.optimum;
          break;
        case Condition::ValueDrops:
          ok = lowest_value < original.optimum;
          break;
      }
      if (ok) return true;
      std::size_t g = 0;
      while (g < gaps.size() && ++choice[g] == orders[g].size()) choice[g++] = 0;
      if (g == gaps.size()) return false;
    }
  };

  std::vector<std::size_t> position = lowest;
  for (;;) {
    const ExtendedValue bound = bound_of(position);
    const bool improves = !best || (want_sup ? *best < bound : bound < *best);
    if (improves && holds_somewhere(position)) best = bound;
    std::size_t l = 0;
    while (l < k && position[l] == highest[l]) {
      position[l] = lowest[l];
      ++l;
    }
    if (l == k) break;
    ++position[l];
  }
  if (!best) return ExtendedValue::infinity();  // nothing reaches the target
  return *best;
}

}  // namespace cotol::reference_detail
