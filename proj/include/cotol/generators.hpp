#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cotol/model.hpp"

namespace cotol {

enum class Family { Explicit, SpanningTrees, BipartiteMatchings, StPaths, RandomExplicit };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

/// An edge doubles as a ground-set element. Graphs are undirected; for
/// BipartiteMatchings `from` is a left vertex and `to` a right vertex.
struct GraphEdge {
  std::string id;
  std::string from;
  std::string to;
  Rational cost;
};

/// Parameters for one instance family. Only the fields of the chosen family
/// are read.
struct GeneratorSpec {
  Family family = Family::Explicit;
  ObjectiveKind objective = ObjectiveKind::Sum;
  std::string name;

  // Explicit
  std::vector<Element> elements;
  std::vector<std::vector<std::string>> solutions;

  // SpanningTrees, BipartiteMatchings, StPaths
  std::vector<GraphEdge> edges;
  std::string source;
  std::string target;

  // RandomExplicit
  std::uint64_t seed = 0;
  std::size_t element_count = 8;
  std::size_t solution_count = 20;
  long min_cost = 1;
  long max_cost = 50;

  /// Enumeration cap; exceeding it raises ResourceError.
  std::size_t max_solutions = 10000;
};

/// Materialises the solution family. Throws StructuralError for malformed
/// graphs (disconnected, no perfect matching, s and t not connected) and
/// ResourceError when the family would exceed max_solutions.
Instance generate(const GeneratorSpec& spec);

/// The four worked examples, named examp1..examp4:
///   examp1  sum, {w,x,y,z}, one optimum of cost 8
///   examp2  sum, {v,...,z}, two optima of cost 7
///   examp3  product, {v,...,z}, two optima of cost 12
///   examp4  bottleneck, {w,x,y,z}, two optima of cost 7
std::vector<Instance> worked_examples();

/// `count` seeded RandomExplicit instances with 3..10 elements and up to 30
/// solutions, sizes varying with the position in the suite. Instance i uses
/// seed + i, so suites with the same seed share a prefix.
std::vector<Instance> random_suite(ObjectiveKind objective, std::size_t count, std::uint64_t seed,
                                   long max_cost = 50);

/// One fixture by name. Throws StructuralError for unknown names.
Instance worked_example(std::string_view name);

/// Uniform draw from [0, n) by rejection on the raw engine output.
/// std::uniform_int_distribution is implementation-defined, which would make
/// seeded instances differ between standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n);

}  // namespace cotol
