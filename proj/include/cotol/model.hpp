#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cotol/extended_value.hpp"
#include "cotol/rational.hpp"

namespace cotol {

enum class ObjectiveKind { Sum, Product, Bottleneck };

std::string_view to_string(ObjectiveKind kind);
/// Accepts "sum", "product", "bottleneck". Throws ParseError.
ObjectiveKind parse_objective(std::string_view text);

/// Position of an element in declaration order.
using ElementIndex = std::size_t;
/// Position of a solution in the family D.
using SolutionIndex = std::size_t;

/// Sorted, duplicate-free list of element positions.
using ElementSet = std::vector<ElementIndex>;

struct Element {
  std::string id;
  Rational cost;

  bool operator==(const Element&) const = default;
};

/// A combinatorial minimization problem with an explicit solution family.
///
/// Immutable after construction; every constructor validates:
///   - ids are unique, every solution is nonempty and references known ids,
///   - the family is nonempty and free of duplicates,
///   - under Product every cost is strictly positive.
class Instance {
 public:
  Instance(std::vector<Element> elements, const std::vector<std::vector<std::string>>& solutions,
           ObjectiveKind objective, std::string name = {});
  Instance(std::vector<Element> elements, std::vector<ElementSet> solutions,
           ObjectiveKind objective, std::string name = {});

  const std::string& name() const { return name_; }
  ObjectiveKind objective() const { return objective_; }

  std::size_t element_count() const { return elements_.size(); }
  std::size_t solution_count() const { return solutions_.size(); }

  const std::vector<Element>& elements() const { return elements_; }
  const Element& element(ElementIndex e) const { return elements_.at(e); }
  const Rational& cost(ElementIndex e) const { return elements_.at(e).cost; }
  const std::string& id(ElementIndex e) const { return elements_.at(e).id; }

  /// Throws StructuralError for unknown ids.
  ElementIndex index_of(std::string_view id) const;
  /// Resolves ids to a sorted, duplicate-free set. Throws StructuralError.
  ElementSet resolve(const std::vector<std::string>& ids) const;

  const std::vector<ElementSet>& solutions() const { return solutions_; }
  const ElementSet& solution(SolutionIndex s) const { return solutions_.at(s); }
  bool contains(SolutionIndex s, ElementIndex e) const {
    return incidence_[s * elements_.size() + e] != 0;
  }

  /// Finds the family member equal to `members` (any order).
  std::optional<SolutionIndex> find_solution(ElementSet members) const;

  /// Same elements, costs, family and objective; the name is ignored.
  bool operator==(const Instance& other) const;

 private:
  void validate_and_index();

  std::string name_;
  std::vector<Element> elements_;
  std::vector<ElementSet> solutions_;
  ObjectiveKind objective_;
  std::unordered_map<std::string, ElementIndex> index_;
  std::vector<unsigned char> incidence_;
};

enum class Direction { Increase, Decrease };

/// Signed cost change on a subset E of the ground set; every delta is >= 0
/// and the sign comes from the direction.
struct PerturbationVector {
  Direction direction = Direction::Increase;
  std::map<ElementIndex, Rational> deltas;

  ElementSet domain() const;
  Rational total() const;
};

/// Objective of a family member. Throws StructuralError for unknown members.
Rational objective_value(const Instance& instance, std::span<const ElementIndex> solution);
Rational objective_value(const Instance& instance, SolutionIndex solution);
Rational objective_value(const Instance& instance, const std::vector<std::string>& ids);

/// Best objective over a sub-family of D; +infinity for the empty sub-family.
ExtendedValue best_cost_over(const Instance& instance, std::span<const SolutionIndex> family);

/// Supremum admissible decrease of c(e): infinite except c(e) under Product.
ExtendedValue max_decrease(const Instance& instance, ElementIndex e);

/// Throws DomainError for negative deltas or, under Product, a decrease that
/// reaches or exceeds the cost.
void validate_perturbation(const Instance& instance, const PerturbationVector& vector);

/// Instance with c'(e) = c(e) +- delta(e) on the vector's domain.
Instance apply_perturbation(const Instance& instance, const PerturbationVector& vector);

}  // namespace cotol
