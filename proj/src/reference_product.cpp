// Product set oracles.
//
// In log coordinates a product instance becomes linear: raising c(e) by a
// factor exp(b) adds b to log c(S) for every S containing e. The suprema are
// therefore convex (upper) or concave (lower) separable maximisations over a
// polyhedron, solved here by spatial branch-and-bound and by Kelley cutting
// planes on floating-point LPs. The infima reduce to small closed-form
// subproblems that are enumerated exhaustively.

#include <algorithm>
#include <cmath>
#include <queue>

#include "cotol/errors.hpp"
#include "cotol/linear_program.hpp"
#include "fourier_motzkin.hpp"
#include "reference_detail.hpp"

namespace cotol::reference_detail {
namespace {

struct LogConstraint {
  std::vector<int> coef;
  Real rhs;
};

using RealMatrix = std::vector<std::vector<Real>>;

bool in_subset_solution(const Instance& instance, SolutionIndex s, ElementIndex e) {
  return instance.contains(s, e);
}

std::vector<int> pattern(const Instance& instance, SolutionIndex s, const ElementSet& subset) {
  std::vector<int> row(subset.size(), 0);
  for (std::size_t l = 0; l < subset.size(); ++l) row[l] = in_subset_solution(instance, s, subset[l]);
  return row;
}

Real log_of(const Rational& value) { return std::log(to_real(value)); }

ExtendedValue to_grid(Real value, const OracleConfig& config) {
  return ExtendedValue(round_to_grid(std::max<Real>(value, 0), grid_denominator(config.product_precision)));
}

Real gap_target(const OracleConfig& config) { return to_real(config.product_precision) / 4; }

// Exact test whether {d >= 0 : coef . d <= 0} contains a nonzero direction.
bool unbounded_direction(const std::vector<std::vector<int>>& rows, std::size_t k,
                         const OracleConfig& config) {
  std::vector<fm::Row> system;
  const std::size_t n = k + 1;  // d_0..d_{k-1}, z = sum d
  for (const auto& coef : rows) {
    fm::Row row{std::vector<Rational>(n, Rational(0)), Rational(0), false};
    for (std::size_t l = 0; l < k; ++l) row.coef[l] = coef[l];
    system.push_back(std::move(row));
  }
  for (std::size_t l = 0; l < k; ++l) {
    fm::Row nonneg{std::vector<Rational>(n, Rational(0)), Rational(0), false};
    nonneg.coef[l] = -1;
    fm::Row cap{std::vector<Rational>(n, Rational(0)), Rational(1), false};
    cap.coef[l] = 1;
    system.push_back(std::move(nonneg));
    system.push_back(std::move(cap));
  }
  fm::Row up{std::vector<Rational>(n, Rational(-1)), Rational(0), false};
  up.coef[k] = 1;
  fm::Row down{std::vector<Rational>(n, Rational(1)), Rational(0), false};
  down.coef[k] = -1;
  system.push_back(std::move(up));
  system.push_back(std::move(down));
  const fm::Range range = fm::project_onto_last(std::move(system), n, config.max_elimination_rows);
  return !range.empty && range.has_upper && range.upper > 0;
}

// ---------------------------------------------------------------------------
// max sum c_l (exp(b_l) - 1) over {b >= 0 : rows}: branch-and-bound on boxes
// with chord overestimators.

struct Box {
  std::vector<Real> lo;
  std::vector<Real> hi;
  Real upper = 0;
  std::vector<Real> point;

  bool operator<(const Box& other) const { return upper < other.upper; }
};

Real convex_term(Real c, Real b) { return c * std::expm1(b); }

Real chord_slope(Real c, Real lo, Real hi) {
  if (hi - lo <= 0) return 0;
  return (convex_term(c, hi) - convex_term(c, lo)) / (hi - lo);
}

bool evaluate_box(Box& box, const std::vector<Real>& costs, const std::vector<LogConstraint>& rows) {
  const std::size_t k = costs.size();
  RealMatrix a;
  std::vector<Real> b;
  for (const auto& row : rows) {
    Real shifted = row.rhs;
    for (std::size_t l = 0; l < k; ++l) shifted -= row.coef[l] * box.lo[l];
    a.emplace_back(row.coef.begin(), row.coef.end());
    b.push_back(shifted);
  }
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<Real> cap(k, 0);
    cap[l] = 1;
    a.push_back(std::move(cap));
    b.push_back(box.hi[l] - box.lo[l]);
  }
  std::vector<Real> slope(k);
  Real base = 0;
  for (std::size_t l = 0; l < k; ++l) {
    slope[l] = chord_slope(costs[l], box.lo[l], box.hi[l]);
    base += convex_term(costs[l], box.lo[l]);
  }
  const auto result = lp::maximize(a, b, slope);
  if (result.status != lp::Status::Optimal) return false;
  box.upper = base + result.value;
  box.point.resize(k);
  for (std::size_t l = 0; l < k; ++l) {
    box.point[l] = std::clamp(box.lo[l] + result.x[l], box.lo[l], box.hi[l]);
  }
  return true;
}

Real maximize_convex(const std::vector<Real>& costs, const std::vector<LogConstraint>& rows,
                     const OracleConfig& config) {
  const std::size_t k = costs.size();
  Box root;
  root.lo.assign(k, 0);
  root.hi.assign(k, 0);
  for (std::size_t l = 0; l < k; ++l) {
    RealMatrix a;
    std::vector<Real> b;
    for (const auto& row : rows) {
      a.emplace_back(row.coef.begin(), row.coef.end());
      b.push_back(row.rhs);
    }
    std::vector<Real> objective(k, 0);
    objective[l] = 1;
    const auto result = lp::maximize(a, b, objective);
    if (result.status != lp::Status::Optimal) {
      throw ResourceError("bounding LP failed on a bounded product region");
    }
    root.hi[l] = std::max<Real>(result.value, 0);
  }

  auto true_value = [&](const std::vector<Real>& point) {
    Real total = 0;
    for (std::size_t l = 0; l < k; ++l) total += convex_term(costs[l], point[l]);
    return total;
  };

  Real best = 0;
  const Real gap = gap_target(config);
  std::priority_queue<Box> queue;
  if (evaluate_box(root, costs, rows)) {
    best = std::max(best, true_value(root.point));
    queue.push(std::move(root));
  }
  std::size_t steps = 0;
  while (!queue.empty() && queue.top().upper > best + gap) {
    if (++steps > config.max_search_steps) {
      throw ResourceError("product branch-and-bound did not certify the requested precision");
    }
    Box box = queue.top();
    queue.pop();
    std::size_t split = 0;
    Real worst = -1;
    for (std::size_t l = 0; l < k; ++l) {
      const Real chord = convex_term(costs[l], box.lo[l]) +
                         chord_slope(costs[l], box.lo[l], box.hi[l]) * (box.point[l] - box.lo[l]);
      const Real excess = chord - convex_term(costs[l], box.point[l]);
      if (excess > worst) {
        worst = excess;
        split = l;
      }
    }
    const Real width = box.hi[split] - box.lo[split];
    Real cut = box.point[split];
    if (!(cut > box.lo[split] + width / 100 && cut < box.hi[split] - width / 100)) {
      cut = box.lo[split] + width / 2;
    }
    for (int side = 0; side < 2; ++side) {
      Box child = box;
      (side == 0 ? child.hi : child.lo)[split] = cut;
      if (!evaluate_box(child, costs, rows)) continue;
      best = std::max(best, true_value(child.point));
      if (child.upper > best + gap) queue.push(std::move(child));
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// max sum c_l (1 - exp(-g_l)) over {0 <= g <= cap : rows}: Kelley cutting
// planes on the separable concave objective.

Real concave_term(Real c, Real g) { return -c * std::expm1(-g); }

Real maximize_concave(const std::vector<Real>& costs, const std::vector<LogConstraint>& rows,
                      const OracleConfig& config) {
  const std::size_t k = costs.size();
  const Real precision = to_real(config.product_precision);
  // Beyond the cap an element contributes less than precision / 1000.
  std::vector<Real> cap(k);
  for (std::size_t l = 0; l < k; ++l) {
    cap[l] = std::log(costs[l] * 1000 * static_cast<Real>(k + 1) / precision) + 1;
  }

  // Variables: g_0..g_{k-1}, t_0..t_{k-1}; maximise sum t.
  struct Cut {
    std::size_t l;
    Real at;
  };
  std::vector<Cut> cuts;
  for (std::size_t l = 0; l < k; ++l) {
    cuts.push_back({l, 0});
    cuts.push_back({l, cap[l]});
  }
  const Real gap = gap_target(config);
  Real best = 0;
  for (std::size_t round = 0;; ++round) {
    if (round > config.max_search_steps) {
      throw ResourceError("product cutting planes did not certify the requested precision");
    }
    RealMatrix a;
    std::vector<Real> b;
    for (const auto& row : rows) {
      std::vector<Real> line(2 * k, 0);
      for (std::size_t l = 0; l < k; ++l) line[l] = row.coef[l];
      a.push_back(std::move(line));
      b.push_back(row.rhs);
    }
    for (std::size_t l = 0; l < k; ++l) {
      std::vector<Real> line(2 * k, 0);
      line[l] = 1;
      a.push_back(std::move(line));
      b.push_back(cap[l]);
    }
    for (const auto& cut : cuts) {
      // t <= f(x0) + f'(x0) (g - x0)
      const Real derivative = costs[cut.l] * std::exp(-cut.at);
      std::vector<Real> line(2 * k, 0);
      line[k + cut.l] = 1;
      line[cut.l] = -derivative;
      a.push_back(std::move(line));
      b.push_back(concave_term(costs[cut.l], cut.at) - derivative * cut.at);
    }
    std::vector<Real> objective(2 * k, 0);
    for (std::size_t l = 0; l < k; ++l) objective[k + l] = 1;
    const auto result = lp::maximize(a, b, objective);
    if (result.status != lp::Status::Optimal) {
      throw ResourceError("cutting-plane LP failed on a bounded product region");
    }
    Real value = 0;
    for (std::size_t l = 0; l < k; ++l) {
      value += concave_term(costs[l], std::clamp<Real>(result.x[l], 0, cap[l]));
    }
    best = std::max(best, value);
    if (result.value - best <= gap) break;
    bool added = false;
    for (std::size_t l = 0; l < k; ++l) {
      const Real at = std::clamp<Real>(result.x[l], 0, cap[l]);
      if (result.x[k + l] - concave_term(costs[l], at) > gap / static_cast<Real>(4 * k)) {
        cuts.push_back({l, at});
        added = true;
      }
    }
    if (!added) break;
  }
  return best;
}

// Cheapest increase on a support T with common raised level; exhaustive over T.
Real cheapest_ratio_increase(const std::vector<Rational>& support_costs, const Rational& ratio) {
  const std::size_t m = support_costs.size();
  Real best = std::numeric_limits<Real>::infinity();
  const Real log_ratio = log_of(ratio);
  for (unsigned mask = 1; mask < (1U << m); ++mask) {
    Real log_sum = 0;
    int count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (mask >> i & 1U) {
        log_sum += log_of(support_costs[i]);
        ++count;
      }
    }
    const Real level = std::exp((log_ratio + log_sum) / count);
    Real total = 0;
    bool valid = true;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1U)) continue;
      const Real c = to_real(support_costs[i]);
      if (level < c * (1 - 1e-15L)) valid = false;
      total += level - c;
    }
    if (valid) best = std::min(best, total);
  }
  return best;
}

}  // namespace

ExtendedValue product_set(const Instance& instance, const ElementSet& subset, ToleranceKind kind,
                          bool current, const OracleConfig& config) {
  const std::size_t k = subset.size();
  const std::vector<Rational> costs = costs_of(instance);
  const Landscape land = score(instance, costs);
  const Rational& f = land.optimum;
  std::vector<SolutionIndex> optima;
  for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
    if (land.optimal[s]) optima.push_back(s);
  }
  std::vector<Real> subset_costs;
  for (ElementIndex e : subset) subset_costs.push_back(to_real(costs[e]));

  switch (kind) {
    case ToleranceKind::UpperRegular: {
      std::vector<std::vector<int>> patterns;
      std::vector<LogConstraint> rows;
      for (SolutionIndex star : optima) {
        const auto inside = pattern(instance, star, subset);
        for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
          const auto other = pattern(instance, s, subset);
          std::vector<int> coef(k);
          for (std::size_t l = 0; l < k; ++l) coef[l] = inside[l] - other[l];
          patterns.push_back(coef);
          rows.push_back({std::move(coef), log_of(land.values[s] / f)});
        }
      }
      if (unbounded_direction(patterns, k, config)) return ExtendedValue::infinity();
      return to_grid(maximize_convex(subset_costs, rows, config), config);
    }
    case ToleranceKind::UpperReverse: {
      Real best = std::numeric_limits<Real>::infinity();
      for (SolutionIndex star : optima) {
        for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
          std::vector<Rational> support;
          for (ElementIndex e : subset) {
            if (instance.contains(star, e) && !instance.contains(s, e)) support.push_back(costs[e]);
          }
          if (support.empty()) continue;
          best = std::min(best, cheapest_ratio_increase(support, land.values[s] / f));
        }
      }
      if (!std::isfinite(best)) return ExtendedValue::infinity();
      return to_grid(best, config);
    }
    case ToleranceKind::LowerRegular: {
      std::vector<LogConstraint> rows;
      if (current) {
        for (SolutionIndex star : optima) {
          const auto inside = pattern(instance, star, subset);
          for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
            const auto other = pattern(instance, s, subset);
            std::vector<int> coef(k);
            for (std::size_t l = 0; l < k; ++l) coef[l] = other[l] - inside[l];
            rows.push_back({std::move(coef), log_of(land.values[s] / f)});
          }
        }
      } else {
        for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
          rows.push_back({pattern(instance, s, subset), log_of(land.values[s] / f)});
        }
      }
      return to_grid(maximize_concave(subset_costs, rows, config), config);
    }
    case ToleranceKind::LowerReverse: {
      // Shrinking several factors of one solution never beats shrinking the
      // single cheapest one: -log(1 - a/c) is convex with value 0 at a = 0.
      std::optional<Rational> best;
      for (SolutionIndex s = 0; s < instance.solution_count(); ++s) {
        const std::vector<SolutionIndex> rivals =
            current ? optima : std::vector<SolutionIndex>{instance.solution_count()};
        for (SolutionIndex star : rivals) {
          for (ElementIndex e : subset) {
            if (!instance.contains(s, e)) continue;
            if (star < instance.solution_count() && instance.contains(star, e)) continue;
            const Rational threshold = costs[e] * (1 - f / land.values[s]);
            if (!best || threshold < *best) best = threshold;
          }
        }
      }
      if (!best) return ExtendedValue::infinity();
      return ExtendedValue(*best);
    }
    default:
      break;
  }
  throw DomainError("product_set expects a set tolerance kind");
}

}  // namespace cotol::reference_detail
