#include "cotol/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "cotol/errors.hpp"

namespace cotol {
namespace {

struct Graph {
  std::vector<std::string> vertices;
  std::map<std::string, std::size_t> index;
  // (u, v) per edge, in input order
  std::vector<std::pair<std::size_t, std::size_t>> ends;
};

Graph build_graph(const std::vector<GraphEdge>& edges) {
  Graph graph;
  auto vertex = [&](const std::string& name) {
    auto [it, inserted] = graph.index.emplace(name, graph.vertices.size());
    if (inserted) graph.vertices.push_back(name);
    return it->second;
  };
  for (const auto& edge : edges) graph.ends.emplace_back(vertex(edge.from), vertex(edge.to));
  return graph;
}

std::vector<Element> edge_elements(const std::vector<GraphEdge>& edges) {
  if (edges.empty()) throw StructuralError("generator needs at least one edge");
  std::vector<Element> elements;
  elements.reserve(edges.size());
  for (const auto& edge : edges) elements.push_back({edge.id, edge.cost});
  return elements;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

void check_cap(std::size_t count, const GeneratorSpec& spec) {
  if (count > spec.max_solutions) {
    throw ResourceError("generated family exceeds " + std::to_string(spec.max_solutions) +
                        " solutions");
  }
}

std::vector<ElementSet> spanning_trees(const GeneratorSpec& spec) {
  const Graph graph = build_graph(spec.edges);
  const std::size_t n = graph.vertices.size();
  UnionFind reach(n);
  for (const auto& [u, v] : graph.ends) {
    if (u == v) throw StructuralError("spanning-tree graph has a self-loop");
    reach.unite(u, v);
  }
  for (std::size_t v = 1; v < n; ++v) {
    if (reach.find(v) != reach.find(0)) throw StructuralError("graph is disconnected");
  }

  std::vector<ElementSet> trees;
  ElementSet chosen;
  const std::size_t m = graph.ends.size();
  auto recurse = [&](auto&& self, std::size_t i, UnionFind components) -> void {
    if (chosen.size() == n - 1) {
      trees.push_back(chosen);
      check_cap(trees.size(), spec);
      return;
    }
    if (m - i < n - 1 - chosen.size()) return;
    UnionFind with = components;
    if (with.unite(graph.ends[i].first, graph.ends[i].second)) {
      chosen.push_back(i);
      self(self, i + 1, with);
      chosen.pop_back();
    }
    self(self, i + 1, components);
  };
  recurse(recurse, 0, UnionFind(n));
  return trees;
}

std::vector<ElementSet> perfect_matchings(const GeneratorSpec& spec) {
  std::vector<std::string> left;
  std::vector<std::string> right;
  for (const auto& edge : spec.edges) {
    if (std::find(left.begin(), left.end(), edge.from) == left.end()) left.push_back(edge.from);
    if (std::find(right.begin(), right.end(), edge.to) == right.end()) right.push_back(edge.to);
  }
  for (const auto& name : left) {
    if (std::find(right.begin(), right.end(), name) != right.end()) {
      throw StructuralError("vertex \"" + name + "\" appears on both sides of the bipartition");
    }
  }
  if (left.size() != right.size()) throw StructuralError("no perfect matching: sides differ in size");

  std::vector<std::vector<std::pair<std::size_t, ElementIndex>>> options(left.size());
  for (ElementIndex e = 0; e < spec.edges.size(); ++e) {
    const auto l = static_cast<std::size_t>(
        std::find(left.begin(), left.end(), spec.edges[e].from) - left.begin());
    const auto r = static_cast<std::size_t>(
        std::find(right.begin(), right.end(), spec.edges[e].to) - right.begin());
    options[l].emplace_back(r, e);
  }
  std::vector<ElementSet> matchings;
  ElementSet chosen;
  std::vector<bool> used(right.size(), false);
  auto recurse = [&](auto&& self, std::size_t l) -> void {
    if (l == left.size()) {
      matchings.push_back(chosen);
      check_cap(matchings.size(), spec);
      return;
    }
    for (const auto& [r, e] : options[l]) {
      if (used[r]) continue;
      used[r] = true;
      chosen.push_back(e);
      self(self, l + 1);
      chosen.pop_back();
      used[r] = false;
    }
  };
  recurse(recurse, 0);
  if (matchings.empty()) throw StructuralError("graph has no perfect matching");
  return matchings;
}

std::vector<ElementSet> st_paths(const GeneratorSpec& spec) {
  const Graph graph = build_graph(spec.edges);
  const auto s = graph.index.find(spec.source);
  const auto t = graph.index.find(spec.target);
  if (s == graph.index.end() || t == graph.index.end()) {
    throw StructuralError("source or target is not a vertex of the graph");
  }
  if (s->second == t->second) throw StructuralError("source and target coincide");

  std::vector<std::vector<std::pair<std::size_t, ElementIndex>>> adjacent(graph.vertices.size());
  for (ElementIndex e = 0; e < graph.ends.size(); ++e) {
    const auto [u, v] = graph.ends[e];
    if (u == v) continue;
    adjacent[u].emplace_back(v, e);
    adjacent[v].emplace_back(u, e);
  }
  std::vector<ElementSet> paths;
  ElementSet chosen;
  std::vector<bool> visited(graph.vertices.size(), false);
  auto recurse = [&](auto&& self, std::size_t v) -> void {
    if (v == t->second) {
      paths.push_back(chosen);
      check_cap(paths.size(), spec);
      return;
    }
    visited[v] = true;
    for (const auto& [w, e] : adjacent[v]) {
      if (visited[w]) continue;
      chosen.push_back(e);
      self(self, w);
      chosen.pop_back();
    }
    visited[v] = false;
  };
  recurse(recurse, s->second);
  if (paths.empty()) throw StructuralError("source and target are not connected");
  // Parallel edges give distinct paths; identical edge sets cannot repeat.
  return paths;
}

Instance random_explicit(const GeneratorSpec& spec) {
  const std::size_t n = spec.element_count;
  if (n == 0 || n > 62) throw StructuralError("random instances need 1..62 elements");
  if (spec.solution_count == 0) throw StructuralError("random instances need at least one solution");
  if (spec.min_cost > spec.max_cost) throw StructuralError("min_cost exceeds max_cost");
  if (spec.objective == ObjectiveKind::Product && spec.min_cost <= 0) {
    throw StructuralError("product instances need positive costs");
  }
  const std::uint64_t subsets = (std::uint64_t{1} << n) - 1;
  if (spec.solution_count > subsets) {
    throw StructuralError("more solutions requested than nonempty subsets exist");
  }
  check_cap(spec.solution_count, spec);

  std::mt19937_64 rng(spec.seed);
  const auto span = static_cast<std::uint64_t>(spec.max_cost - spec.min_cost) + 1;
  std::vector<Element> elements;
  for (std::size_t e = 0; e < n; ++e) {
    const long cost = spec.min_cost + static_cast<long>(bounded(rng, span));
    elements.push_back({"e" + std::to_string(e), Rational(cost)});
  }
  std::set<std::uint64_t> seen;
  std::vector<ElementSet> solutions;
  while (solutions.size() < spec.solution_count) {
    const std::uint64_t mask = 1 + bounded(rng, subsets);
    if (!seen.insert(mask).second) continue;
    ElementSet members;
    for (std::size_t e = 0; e < n; ++e) {
      if (mask >> e & 1U) members.push_back(e);
    }
    solutions.push_back(std::move(members));
  }
  return Instance(std::move(elements), std::move(solutions), spec.objective, spec.name);
}

Instance make(std::vector<std::pair<std::string, long>> costs,
              const std::vector<std::vector<std::string>>& solutions, ObjectiveKind objective,
              std::string name) {
  std::vector<Element> elements;
  for (auto& [id, cost] : costs) elements.push_back({std::move(id), Rational(cost)});
  return Instance(std::move(elements), solutions, objective, std::move(name));
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Explicit:
      return "explicit";
    case Family::SpanningTrees:
      return "spanning-trees";
    case Family::BipartiteMatchings:
      return "bipartite-matchings";
    case Family::StPaths:
      return "st-paths";
    case Family::RandomExplicit:
      return "random-explicit";
  }
  return "?";
}

Family parse_family(std::string_view text) {
  for (auto family : {Family::Explicit, Family::SpanningTrees, Family::BipartiteMatchings,
                      Family::StPaths, Family::RandomExplicit}) {
    if (text == to_string(family)) return family;
  }
  throw ParseError("unknown generator family \"" + std::string(text) + "\"");
}

std::vector<Instance> random_suite(ObjectiveKind objective, std::size_t count, std::uint64_t seed,
                                   long max_cost) {
  std::vector<Instance> suite;
  suite.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    GeneratorSpec spec;
    spec.family = Family::RandomExplicit;
    spec.objective = objective;
    spec.seed = seed + i;
    spec.element_count = 3 + i % 8;
    spec.solution_count = std::min<std::size_t>((std::size_t{1} << spec.element_count) - 1, 1 + (i * 7) % 30);
    spec.max_cost = max_cost;
    spec.name = std::string(to_string(objective)) + "-" + std::to_string(spec.seed);
    suite.push_back(generate(spec));
  }
  return suite;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw DomainError("bounded() needs a positive range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    const std::uint64_t draw = rng();
    if (draw < limit) return draw % n;
  }
}

Instance generate(const GeneratorSpec& spec) {
  switch (spec.family) {
    case Family::Explicit:
      return Instance(spec.elements, spec.solutions, spec.objective, spec.name);
    case Family::SpanningTrees:
      return Instance(edge_elements(spec.edges), spanning_trees(spec), spec.objective, spec.name);
    case Family::BipartiteMatchings:
      return Instance(edge_elements(spec.edges), perfect_matchings(spec), spec.objective,
                      spec.name);
    case Family::StPaths:
      return Instance(edge_elements(spec.edges), st_paths(spec), spec.objective, spec.name);
    case Family::RandomExplicit:
      return random_explicit(spec);
  }
  throw StructuralError("unknown generator family");
}

std::vector<Instance> worked_examples() {
  std::vector<Instance> fixtures;
  fixtures.push_back(make({{"w", 3}, {"x", 5}, {"y", 4}, {"z", 6}}, {{"w", "x"}, {"y", "z"}},
                          ObjectiveKind::Sum, "examp1"));
  fixtures.push_back(make({{"v", 2}, {"w", 3}, {"x", 5}, {"y", 4}, {"z", 8}},
                          {{"v", "x"}, {"w", "y"}, {"z"}}, ObjectiveKind::Sum, "examp2"));
  fixtures.push_back(make({{"v", 2}, {"w", 3}, {"x", 6}, {"y", 4}, {"z", 24}},
                          {{"v", "x"}, {"w", "y"}, {"z"}}, ObjectiveKind::Product, "examp3"));
  fixtures.push_back(make({{"w", 2}, {"x", 3}, {"y", 7}, {"z", 8}},
                          {{"w", "y"}, {"x", "y"}, {"z"}}, ObjectiveKind::Bottleneck, "examp4"));
  return fixtures;
}

Instance worked_example(std::string_view name) {
  for (auto& fixture : worked_examples()) {
    if (fixture.name() == name) return fixture;
  }
  throw StructuralError("unknown example \"" + std::string(name) +
                        "\" (expected examp1, examp2, examp3 or examp4)");
}

}  // namespace cotol
