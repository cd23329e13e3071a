#include "cotol/model.hpp"

#include <algorithm>
#include <set>

#include "cotol/errors.hpp"

namespace cotol {

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::Sum:
      return "sum";
    case ObjectiveKind::Product:
      return "product";
    case ObjectiveKind::Bottleneck:
      return "bottleneck";
  }
  return "?";
}

ObjectiveKind parse_objective(std::string_view text) {
  if (text == "sum") return ObjectiveKind::Sum;
  if (text == "product") return ObjectiveKind::Product;
  if (text == "bottleneck") return ObjectiveKind::Bottleneck;
  throw ParseError("unknown objective \"" + std::string(text) +
                   "\" (expected sum, product or bottleneck)");
}

Instance::Instance(std::vector<Element> elements,
                   const std::vector<std::vector<std::string>>& solutions, ObjectiveKind objective,
                   std::string name)
    : name_(std::move(name)), elements_(std::move(elements)), objective_(objective) {
  for (ElementIndex e = 0; e < elements_.size(); ++e) {
    if (!index_.emplace(elements_[e].id, e).second) {
      throw StructuralError("duplicate element id \"" + elements_[e].id + "\"");
    }
  }
  solutions_.reserve(solutions.size());
  for (const auto& ids : solutions) {
    ElementSet members;
    members.reserve(ids.size());
    for (const auto& id : ids) members.push_back(index_of(id));
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw StructuralError("solution lists an element twice");
    }
    solutions_.push_back(std::move(members));
  }
  validate_and_index();
}

Instance::Instance(std::vector<Element> elements, std::vector<ElementSet> solutions,
                   ObjectiveKind objective, std::string name)
    : name_(std::move(name)),
      elements_(std::move(elements)),
      solutions_(std::move(solutions)),
      objective_(objective) {
  for (ElementIndex e = 0; e < elements_.size(); ++e) {
    if (!index_.emplace(elements_[e].id, e).second) {
      throw StructuralError("duplicate element id \"" + elements_[e].id + "\"");
    }
  }
  for (auto& members : solutions_) {
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
      throw StructuralError("solution lists an element twice");
    }
    if (!members.empty() && members.back() >= elements_.size()) {
      throw StructuralError("solution references element index " +
                            std::to_string(members.back()) + " out of range");
    }
  }
  validate_and_index();
}

void Instance::validate_and_index() {
  if (solutions_.empty()) {
    throw StructuralError("the solution family is empty");
  }
  std::set<ElementSet> seen;
  for (const auto& members : solutions_) {
    if (members.empty()) throw StructuralError("empty solution in family");
    if (!seen.insert(members).second) {
      std::string listed;
      for (ElementIndex e : members) listed += (listed.empty() ? "" : ",") + elements_[e].id;
      throw StructuralError("duplicate solution {" + listed + "}");
    }
  }
  if (objective_ == ObjectiveKind::Product) {
    for (const auto& element : elements_) {
      if (element.cost <= 0) {
        throw StructuralError("product objective requires positive costs; c(" + element.id +
                              ") = " + to_string(element.cost));
      }
    }
  }
  incidence_.assign(solutions_.size() * elements_.size(), 0);
  for (SolutionIndex s = 0; s < solutions_.size(); ++s) {
    for (ElementIndex e : solutions_[s]) incidence_[s * elements_.size() + e] = 1;
  }
}

ElementIndex Instance::index_of(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) {
    throw StructuralError("unknown element id \"" + std::string(id) + "\"");
  }
  return it->second;
}

ElementSet Instance::resolve(const std::vector<std::string>& ids) const {
  ElementSet set;
  set.reserve(ids.size());
  for (const auto& id : ids) set.push_back(index_of(id));
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

std::optional<SolutionIndex> Instance::find_solution(ElementSet members) const {
  std::sort(members.begin(), members.end());
  for (SolutionIndex s = 0; s < solutions_.size(); ++s) {
    if (solutions_[s] == members) return s;
  }
  return std::nullopt;
}

bool Instance::operator==(const Instance& other) const {
  return objective_ == other.objective_ && elements_ == other.elements_ &&
         solutions_ == other.solutions_;
}

ElementSet PerturbationVector::domain() const {
  ElementSet set;
  for (const auto& [e, delta] : deltas) set.push_back(e);
  return set;
}

Rational PerturbationVector::total() const {
  Rational sum = 0;
  for (const auto& [e, delta] : deltas) sum += delta;
  return sum;
}

Rational objective_value(const Instance& instance, std::span<const ElementIndex> solution) {
  if (solution.empty()) throw StructuralError("objective of an empty solution");
  for (ElementIndex e : solution) {
    if (e >= instance.element_count()) {
      throw StructuralError("element index " + std::to_string(e) + " out of range");
    }
  }
  switch (instance.objective()) {
    case ObjectiveKind::Sum: {
      Rational sum = 0;
      for (ElementIndex e : solution) sum += instance.cost(e);
      return sum;
    }
    case ObjectiveKind::Product: {
      Rational product = 1;
      for (ElementIndex e : solution) product *= instance.cost(e);
      return product;
    }
    case ObjectiveKind::Bottleneck: {
      Rational largest = instance.cost(solution.front());
      for (ElementIndex e : solution) {
        if (instance.cost(e) > largest) largest = instance.cost(e);
      }
      return largest;
    }
  }
  return 0;
}

Rational objective_value(const Instance& instance, SolutionIndex solution) {
  if (solution >= instance.solution_count()) {
    throw StructuralError("solution index " + std::to_string(solution) + " out of range");
  }
  return objective_value(instance, std::span<const ElementIndex>(instance.solution(solution)));
}

Rational objective_value(const Instance& instance, const std::vector<std::string>& ids) {
  const ElementSet members = instance.resolve(ids);
  return objective_value(instance, std::span<const ElementIndex>(members));
}

ExtendedValue best_cost_over(const Instance& instance, std::span<const SolutionIndex> family) {
  ExtendedValue best = ExtendedValue::infinity();
  for (SolutionIndex s : family) best = min(best, ExtendedValue(objective_value(instance, s)));
  return best;
}

ExtendedValue max_decrease(const Instance& instance, ElementIndex e) {
  if (e >= instance.element_count()) {
    throw StructuralError("element index " + std::to_string(e) + " out of range");
  }
  if (instance.objective() == ObjectiveKind::Product) return ExtendedValue(instance.cost(e));
  return ExtendedValue::infinity();
}

void validate_perturbation(const Instance& instance, const PerturbationVector& vector) {
  for (const auto& [e, delta] : vector.deltas) {
    if (e >= instance.element_count()) {
      throw StructuralError("perturbation references element index " + std::to_string(e));
    }
    if (delta < 0) {
      throw DomainError("negative delta for " + instance.id(e));
    }
    if (vector.direction == Direction::Decrease &&
        instance.objective() == ObjectiveKind::Product && delta >= instance.cost(e)) {
      throw DomainError("decrease of " + instance.id(e) + " by " + to_string(delta) +
                        " would make its product cost non-positive");
    }
  }
}

Instance apply_perturbation(const Instance& instance, const PerturbationVector& vector) {
  validate_perturbation(instance, vector);
  std::vector<Element> elements = instance.elements();
  for (const auto& [e, delta] : vector.deltas) {
    if (vector.direction == Direction::Increase) {
      elements[e].cost += delta;
    } else {
      elements[e].cost -= delta;
    }
  }
  return Instance(std::move(elements), instance.solutions(), instance.objective(),
                  instance.name());
}

}  // namespace cotol
