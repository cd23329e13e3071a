#include "product_search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "cotol/errors.hpp"

namespace cotol::product_search {
namespace {

using Matrix = std::vector<std::vector<Real>>;

// Exact determinant of a small integer matrix (fraction-free elimination).
long long integer_determinant(std::vector<std::vector<long long>> m) {
  const std::size_t n = m.size();
  long long sign = 1;
  long long previous = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / previous;
      }
    }
    previous = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Gaussian elimination with partial pivoting; `a` must be nonsingular.
std::vector<Real> solve_dense(Matrix a, std::vector<Real> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::fabs(a[row][col]) > std::fabs(a[pivot][col])) pivot = row;
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t row = col + 1; row < n; ++row) {
      const Real factor = a[row][col] / a[col][col];
      if (factor == 0) continue;
      for (std::size_t j = col; j < n; ++j) a[row][j] -= factor * a[col][j];
      b[row] -= factor * b[col];
    }
  }
  std::vector<Real> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Real acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

Real dot(const std::vector<int>& coef, const std::vector<Real>& x) {
  Real acc = 0;
  for (std::size_t l = 0; l < x.size(); ++l) acc += coef[l] * x[l];
  return acc;
}

}  // namespace

Allocation max_convex_over_vertices(const std::vector<Real>& costs, const std::vector<LogRow>& rows) {
  const std::size_t k = costs.size();
  std::vector<LogRow> constraints = rows;
  for (std::size_t l = 0; l < k; ++l) {
    LogRow nonneg{std::vector<int>(k, 0), 0};
    nonneg.coef[l] = -1;
    constraints.push_back(std::move(nonneg));
  }
  const std::size_t m = constraints.size();

  Allocation best;
  best.alpha.assign(k, 0);
  std::vector<Real> best_point(k, 0);
  if (m < k) return best;

  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::vector<long long>> exact(k, std::vector<long long>(k));
  Matrix system(k, std::vector<Real>(k));
  std::vector<Real> rhs(k);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) {
      const LogRow& row = constraints[pick[i]];
      for (std::size_t j = 0; j < k; ++j) {
        exact[i][j] = row.coef[j];
        system[i][j] = row.coef[j];
      }
      rhs[i] = row.rhs;
    }
    if (integer_determinant(exact) != 0) {
      std::vector<Real> point = solve_dense(system, rhs);
      bool feasible = true;
      for (const LogRow& row : constraints) {
        const Real slack = 1e-12L * (1 + std::fabs(row.rhs));
        if (dot(row.coef, point) > row.rhs + slack) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        Real value = 0;
        for (std::size_t l = 0; l < k; ++l) {
          point[l] = std::max<Real>(point[l], 0);
          value += costs[l] * std::expm1(point[l]);
        }
        if (value > best.value) {
          best.value = value;
          best_point = point;
        }
      }
    }
    // next k-combination of {0..m-1}
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  for (std::size_t l = 0; l < k; ++l) best.alpha[l] = costs[l] * std::expm1(best_point[l]);
  return best;
}

Allocation water_fill(std::vector<Real> costs, Real log_ratio) {
  Allocation result;
  std::vector<std::size_t> order(costs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return costs[a] < costs[b]; });
  result.alpha.assign(costs.size(), 0);
  if (log_ratio <= 0 || costs.empty()) return result;

  Real log_prefix = 0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    log_prefix += std::log(costs[order[j]]);
    const Real level = std::exp((log_ratio + log_prefix) / static_cast<Real>(j + 1));
    if (j + 1 == order.size() || level <= costs[order[j + 1]]) {
      for (std::size_t i = 0; i <= j; ++i) {
        const Real raise = std::max<Real>(level - costs[order[i]], 0);
        result.alpha[order[i]] = raise;
        result.value += raise;
      }
      return result;
    }
  }
  return result;
}

Allocation max_concave_barrier(const std::vector<Real>& costs, const std::vector<LogRow>& rows,
                               Real gap) {
  const std::size_t k = costs.size();
  Allocation result;
  result.alpha.assign(k, 0);
  if (k == 0) return result;

  std::vector<Real> x(k, std::numeric_limits<Real>::infinity());
  for (const LogRow& row : rows) {
    if (!(row.rhs > 0)) throw DomainError("barrier search needs strictly positive right-hand sides");
    const int weight = std::accumulate(row.coef.begin(), row.coef.end(), 0);
    for (std::size_t l = 0; l < k; ++l) {
      if (row.coef[l] > 0) x[l] = std::min(x[l], row.rhs / (2 * static_cast<Real>(weight)));
    }
  }
  for (Real v : x) {
    if (!std::isfinite(v)) throw DomainError("barrier search needs every variable to be bounded");
  }

  const Real m = static_cast<Real>(rows.size() + k);
  auto slacks_ok = [&](const std::vector<Real>& point) {
    for (Real v : point) {
      if (!(v > 0)) return false;
    }
    for (const LogRow& row : rows) {
      if (!(row.rhs - dot(row.coef, point) > 0)) return false;
    }
    return true;
  };
  auto barrier_value = [&](const std::vector<Real>& point, Real t) {
    Real value = 0;
    for (std::size_t l = 0; l < k; ++l) {
      value += t * -costs[l] * std::expm1(-point[l]) + std::log(point[l]);
    }
    for (const LogRow& row : rows) value += std::log(row.rhs - dot(row.coef, point));
    return value;
  };

  for (Real t = 1;; t *= 10) {
    for (int iteration = 0; iteration < 200; ++iteration) {
      std::vector<Real> grad(k);
      Matrix neg_hessian(k, std::vector<Real>(k, 0));
      for (std::size_t l = 0; l < k; ++l) {
        const Real curvature = t * costs[l] * std::exp(-x[l]);
        grad[l] = curvature + 1 / x[l];
        neg_hessian[l][l] = curvature + 1 / (x[l] * x[l]);
      }
      for (const LogRow& row : rows) {
        const Real slack = row.rhs - dot(row.coef, x);
        for (std::size_t l = 0; l < k; ++l) {
          if (row.coef[l] == 0) continue;
          grad[l] -= row.coef[l] / slack;
          for (std::size_t j = 0; j < k; ++j) {
            neg_hessian[l][j] += row.coef[l] * row.coef[j] / (slack * slack);
          }
        }
      }
      const std::vector<Real> step = solve_dense(neg_hessian, grad);
      Real decrement = 0;
      for (std::size_t l = 0; l < k; ++l) decrement += grad[l] * step[l];
      if (decrement < 1e-18L) break;

      Real s = 1;
      std::vector<Real> trial(k);
      auto move = [&](Real scale) {
        for (std::size_t l = 0; l < k; ++l) trial[l] = x[l] + scale * step[l];
      };
      move(s);
      while (!slacks_ok(trial) && s > 1e-30L) move(s *= 0.5L);
      const Real current = barrier_value(x, t);
      while (barrier_value(trial, t) < current + 0.25L * s * decrement && s > 1e-30L) {
        move(s *= 0.5L);
      }
      if (!slacks_ok(trial) || s <= 1e-30L) break;
      x = trial;
    }
    if (m / t <= gap) break;
  }

  for (std::size_t l = 0; l < k; ++l) {
    result.alpha[l] = -costs[l] * std::expm1(-x[l]);
    result.value += result.alpha[l];
  }
  return result;
}

}  // namespace cotol::product_search
