#include "fourier_motzkin.hpp"

#include <map>
#include <utility>

#include "cotol/errors.hpp"

namespace cotol::fm {
namespace {

// Scaled so the first nonzero coefficient is +-1; keyed on the coefficients
// so that parallel rows collapse onto the tightest one.
using System = std::map<std::vector<Rational>, std::pair<Rational, bool>>;

// Returns false when the row is a contradiction with no variables left.
bool insert(System& system, Row row) {
  std::size_t lead = 0;
  while (lead < row.coef.size() && row.coef[lead] == 0) ++lead;
  if (lead == row.coef.size()) {
    return row.strict ? 0 < row.bound : 0 <= row.bound;
  }
  const Rational scale = abs(row.coef[lead]);
  if (scale != 1) {
    for (auto& c : row.coef) c /= scale;
    row.bound /= scale;
  }
  auto [it, inserted] = system.emplace(std::move(row.coef), std::make_pair(row.bound, row.strict));
  if (!inserted) {
    auto& [bound, strict] = it->second;
    if (row.bound < bound || (row.bound == bound && row.strict)) {
      bound = row.bound;
      strict = row.strict;
    }
  }
  return true;
}

}  // namespace

Range project_onto_last(std::vector<Row> rows, std::size_t variables, std::size_t max_rows) {
  Range range;
  System system;
  for (auto& row : rows) {
    row.coef.resize(variables);
    if (!insert(system, std::move(row))) {
      range.empty = true;
      return range;
    }
  }

  std::vector<bool> eliminated(variables, false);
  for (std::size_t round = 0; round + 1 < variables; ++round) {
    // cheapest variable first: fewest generated combinations
    std::size_t pick = variables;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j + 1 < variables; ++j) {
      if (eliminated[j]) continue;
      std::size_t pos = 0;
      std::size_t neg = 0;
      for (const auto& [coef, bound] : system) {
        if (coef[j] > 0) ++pos;
        if (coef[j] < 0) ++neg;
      }
      const std::size_t cost = pos * neg;
      if (pick == variables || cost < best_cost) {
        pick = j;
        best_cost = cost;
      }
    }
    eliminated[pick] = true;

    std::vector<Row> positive;
    std::vector<Row> negative;
    System next;
    for (auto& [coef, bound] : system) {
      Row row{coef, bound.first, bound.second};
      if (coef[pick] > 0) {
        positive.push_back(std::move(row));
      } else if (coef[pick] < 0) {
        negative.push_back(std::move(row));
      } else {
        insert(next, std::move(row));
      }
    }
    for (const Row& p : positive) {
      for (const Row& n : negative) {
        const Rational wp = -n.coef[pick];
        const Rational wn = p.coef[pick];
        Row combined;
        combined.coef.resize(variables);
        for (std::size_t j = 0; j < variables; ++j) {
          combined.coef[j] = wp * p.coef[j] + wn * n.coef[j];
        }
        combined.coef[pick] = 0;
        combined.bound = wp * p.bound + wn * n.bound;
        combined.strict = p.strict || n.strict;
        if (!insert(next, std::move(combined))) {
          range.empty = true;
          return range;
        }
        if (next.size() > max_rows) {
          throw ResourceError("elimination exceeded " + std::to_string(max_rows) + " rows");
        }
      }
    }
    system = std::move(next);
  }

  const std::size_t last = variables - 1;
  for (const auto& [coef, bound] : system) {
    const Rational& a = coef[last];
    const Rational value = bound.first / a;
    if (a > 0) {
      if (!range.has_upper || value < range.upper ||
          (value == range.upper && bound.second)) {
        range.upper_strict = range.has_upper && value == range.upper
                                 ? (range.upper_strict || bound.second)
                                 : bound.second;
        range.upper = value;
        range.has_upper = true;
      }
    } else {
      if (!range.has_lower || value > range.lower ||
          (value == range.lower && bound.second)) {
        range.lower_strict = range.has_lower && value == range.lower
                                 ? (range.lower_strict || bound.second)
                                 : bound.second;
        range.lower = value;
        range.has_lower = true;
      }
    }
  }
  if (range.has_lower && range.has_upper &&
      (range.lower > range.upper ||
       (range.lower == range.upper && (range.lower_strict || range.upper_strict)))) {
    range.empty = true;
  }
  return range;
}

}  // namespace cotol::fm
