#pragma once

// Floating-point searches behind the product-objective set tolerances.
// All three work in logarithmic coordinates, where multiplicative cost
// changes become linear.

#include <vector>

#include "cotol/rational.hpp"

namespace cotol::product_search {

/// One linear constraint  sum_l coef[l] * x[l] <= rhs  over the subset's
/// variables. Coefficients are small integers.
struct LogRow {
  std::vector<int> coef;
  Real rhs;
};

struct Allocation {
  Real value = 0;
  std::vector<Real> alpha;
};

/// Maximises sum_l c_l (exp(b_l) - 1) over the bounded polyhedron
/// {b >= 0 : rows}. The objective is convex, so the maximum sits on a vertex;
/// every vertex is visited by solving each nonsingular choice of k tight
/// constraints. The caller guarantees boundedness.
Allocation max_convex_over_vertices(const std::vector<Real>& costs, const std::vector<LogRow>& rows);

/// Cheapest increase of the costs `costs` whose product grows by the factor
/// exp(log_ratio). Perturbed costs are equalised from the cheapest element
/// upwards.
Allocation water_fill(std::vector<Real> costs, Real log_ratio);

/// Maximises sum_l c_l (1 - exp(-g_l)) over {g >= 0 : rows} where every row
/// has non-negative coefficients and a strictly positive right-hand side.
/// Log-barrier interior-point method; returns a feasible point whose value
/// is within `gap` of the supremum.
Allocation max_concave_barrier(const std::vector<Real>& costs, const std::vector<LogRow>& rows,
                               Real gap);

}  // namespace cotol::product_search
