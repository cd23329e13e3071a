#include "doctest.h"

#include "cotol/analysis.hpp"
#include "cotol/errors.hpp"
#include "cotol/generators.hpp"
#include "cotol/model.hpp"

using namespace cotol;

namespace {

Instance example(std::string_view name) { return worked_example(name); }

ElementSet ids(const Instance& instance, std::vector<std::string> names) {
  return instance.resolve(names);
}

}  // namespace

TEST_CASE("rational parsing is exact and rejects floats") {
  CHECK(parse_rational("7/2") == Rational(7, 2));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational(" 4/6 ") == Rational(2, 3));
  CHECK_THROWS_AS(parse_rational("3.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1e3"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK(to_string(Rational(6, 4)) == "3/2");
}

TEST_CASE("extended values order and add") {
  const auto inf = ExtendedValue::infinity();
  CHECK(ExtendedValue(1000000) < inf);
  CHECK(ExtendedValue::negative_infinity() < ExtendedValue(-1000000));
  CHECK((inf + ExtendedValue(3)).is_infinite());
  CHECK((inf - ExtendedValue(3)).is_infinite());
  CHECK_THROWS_AS(ExtendedValue(3) - inf, DomainError);
  CHECK_THROWS_AS(inf + ExtendedValue::negative_infinity(), DomainError);
  CHECK(ExtendedValue::parse("inf") == inf);
  CHECK(ExtendedValue::parse("5/3").value() == Rational(5, 3));
  CHECK(ExtendedValue(Rational(5, 3)).to_string() == "5/3");
}

TEST_CASE("objective values on the fixtures") {
  const Instance sum = example("examp2");
  CHECK(objective_value(sum, std::vector<std::string>{"v", "x"}) == 7);
  const Instance product = example("examp3");
  CHECK(objective_value(product, std::vector<std::string>{"w", "y"}) == 12);
  const Instance bottleneck = example("examp4");
  CHECK(objective_value(bottleneck, std::vector<std::string>{"x", "y"}) == 7);
  CHECK(objective_value(sum, std::vector<std::string>{"z"}) == 8);
  CHECK_THROWS_AS(objective_value(sum, std::vector<std::string>{"q"}), StructuralError);
}

TEST_CASE("best cost over sub-families") {
  const Instance sum = example("examp2");
  const std::vector<SolutionIndex> all{0, 1, 2};
  CHECK(best_cost_over(sum, all) == ExtendedValue(7));
  CHECK(best_cost_over(sum, std::vector<SolutionIndex>{}).is_infinite());
  const Instance first = example("examp1");
  CHECK(best_cost_over(first, d_minus(first, first.index_of("w"))) == ExtendedValue(10));
}

TEST_CASE("max decrease") {
  const Instance product = example("examp3");
  CHECK(max_decrease(product, product.index_of("z")) == ExtendedValue(24));
  CHECK(max_decrease(example("examp2"), 0).is_infinite());
  CHECK(max_decrease(example("examp4"), 0).is_infinite());
}

TEST_CASE("applying perturbations") {
  const Instance sum = example("examp2");
  PerturbationVector up;
  up.deltas = {{sum.index_of("v"), Rational(1)}, {sum.index_of("w"), Rational(1)}};
  const Instance raised = apply_perturbation(sum, up);
  CHECK(raised.cost(raised.index_of("v")) == 3);
  CHECK(raised.cost(raised.index_of("w")) == 4);
  CHECK(raised.cost(raised.index_of("x")) == 5);

  CHECK(apply_perturbation(sum, PerturbationVector{}) == sum);

  const Instance product = example("examp3");
  PerturbationVector product_up;
  product_up.deltas = {{product.index_of("v"), Rational(2)}, {product.index_of("w"), Rational(3)}};
  const Instance lifted = apply_perturbation(product, product_up);
  CHECK(lifted.cost(lifted.index_of("v")) == 4);
  CHECK(lifted.cost(lifted.index_of("w")) == 6);

  PerturbationVector too_far;
  too_far.direction = Direction::Decrease;
  too_far.deltas = {{product.index_of("z"), Rational(24)}};
  CHECK_THROWS_AS(apply_perturbation(product, too_far), DomainError);
  too_far.deltas = {{product.index_of("z"), Rational(47, 2)}};
  CHECK(apply_perturbation(product, too_far).cost(product.index_of("z")) == Rational(1, 2));

  PerturbationVector negative;
  negative.deltas = {{0, Rational(-1)}};
  CHECK_THROWS_AS(apply_perturbation(sum, negative), DomainError);
}

TEST_CASE("instance validation") {
  std::vector<Element> elements{{"a", Rational(1)}, {"b", Rational(2)}};
  using Ids = std::vector<std::vector<std::string>>;
  CHECK_THROWS_AS(Instance(elements, Ids{}, ObjectiveKind::Sum), StructuralError);
  CHECK_THROWS_AS(Instance(elements, Ids{{"a"}, {"a"}}, ObjectiveKind::Sum), StructuralError);
  CHECK_THROWS_AS(Instance(elements, Ids{{}}, ObjectiveKind::Sum), StructuralError);
  CHECK_THROWS_AS(Instance(elements, Ids{{"c"}}, ObjectiveKind::Sum), StructuralError);
  CHECK_THROWS_AS(Instance(elements, Ids{{"a", "a"}}, ObjectiveKind::Sum), StructuralError);
  std::vector<Element> zero{{"a", Rational(0)}};
  CHECK_THROWS_AS(Instance(zero, Ids{{"a"}}, ObjectiveKind::Product), StructuralError);
  CHECK_NOTHROW(Instance(zero, Ids{{"a"}}, ObjectiveKind::Sum));
  std::vector<Element> twice{{"a", Rational(1)}, {"a", Rational(2)}};
  CHECK_THROWS_AS(Instance(twice, Ids{{"a"}}, ObjectiveKind::Sum), StructuralError);
}

TEST_CASE("analysis of the fixtures") {
  const Instance second = example("examp2");
  const AnalysisCache cache = analyze(second);
  CHECK(cache.optimal_value == 7);
  CHECK(cache.optimal_set == std::vector<SolutionIndex>{0, 1});
  CHECK(cache.ute == ids(second, {"v", "w", "x", "y"}));
  CHECK(cache.lte == ids(second, {"v", "w", "x", "y", "z"}));

  const Instance first = example("examp1");
  const AnalysisCache first_cache = analyze(first);
  CHECK(first_cache.optimal_value == 8);
  CHECK(first_cache.optimal_set == std::vector<SolutionIndex>{0});
  CHECK(first_cache.ute == ids(first, {"w", "x"}));
  CHECK(first_cache.lte == ids(first, {"y", "z"}));

  const Instance single({{"a", Rational(1)}, {"b", Rational(2)}},
                        std::vector<std::vector<std::string>>{{"a", "b"}}, ObjectiveKind::Sum);
  const AnalysisCache single_cache = analyze(single);
  CHECK(single_cache.ute == ElementSet{0, 1});
  CHECK(single_cache.lte.empty());
}

TEST_CASE("solution sub-families around an element") {
  const Instance second = example("examp2");
  const ElementIndex z = second.index_of("z");
  CHECK(d_plus(second, z) == std::vector<SolutionIndex>{2});
  CHECK(d_minus(second, z) == std::vector<SolutionIndex>{0, 1});
  const Instance first = example("examp1");
  CHECK(d_plus(first, first.index_of("w")) == std::vector<SolutionIndex>{0});

  const Instance loose({{"a", Rational(1)}, {"b", Rational(2)}},
                       std::vector<std::vector<std::string>>{{"a"}}, ObjectiveKind::Sum);
  CHECK(d_plus(loose, 1).empty());
  CHECK_THROWS_AS(d_plus(loose, 5), StructuralError);
}

TEST_CASE("subset domains") {
  const Instance second = example("examp2");
  const AnalysisCache cache = analyze(second);
  CHECK_FALSE(in_uts(second, cache, ids(second, {"v", "w"})));
  CHECK(in_uts(second, cache, ids(second, {"v", "x"})));
  CHECK(in_uts(second, cache, {}));
  CHECK(in_lts(second, cache, {}));
  CHECK(in_lts(second, cache, ids(second, {"z"})));
  CHECK(in_lts(second, cache, ids(second, {"y", "z"})));
  CHECK_FALSE(in_lts(second, cache, ids(second, {"v", "w"})));
  for (ElementIndex e = 0; e < second.element_count(); ++e) {
    CHECK(cache.in_ute(e) == in_uts(second, cache, {e}));
    CHECK(cache.in_lte(e) == in_lts(second, cache, {e}));
  }
}

TEST_CASE("generated families") {
  GeneratorSpec triangle;
  triangle.family = Family::SpanningTrees;
  triangle.edges = {{"ab", "a", "b", Rational(1)}, {"bc", "b", "c", Rational(2)},
                    {"ca", "c", "a", Rational(3)}};
  const Instance trees = generate(triangle);
  CHECK(trees.solution_count() == 3);
  for (const auto& tree : trees.solutions()) CHECK(tree.size() == 2);

  GeneratorSpec k4 = triangle;
  k4.edges = {{"ab", "a", "b", Rational(1)}, {"ac", "a", "c", Rational(1)},
              {"ad", "a", "d", Rational(1)}, {"bc", "b", "c", Rational(1)},
              {"bd", "b", "d", Rational(1)}, {"cd", "c", "d", Rational(1)}};
  CHECK(generate(k4).solution_count() == 16);

  GeneratorSpec disconnected = triangle;
  disconnected.edges = {{"ab", "a", "b", Rational(1)}, {"cd", "c", "d", Rational(1)}};
  CHECK_THROWS_AS(generate(disconnected), StructuralError);

  GeneratorSpec bipartite;
  bipartite.family = Family::BipartiteMatchings;
  bipartite.edges = {{"a1", "a", "1", Rational(1)}, {"a2", "a", "2", Rational(2)},
                     {"b1", "b", "1", Rational(3)}, {"b2", "b", "2", Rational(4)}};
  CHECK(generate(bipartite).solution_count() == 2);
  GeneratorSpec lopsided = bipartite;
  lopsided.edges = {{"a1", "a", "1", Rational(1)}, {"b1", "b", "1", Rational(1)},
                    {"a2", "a", "2", Rational(1)}, {"b2", "b", "2", Rational(1)},
                    {"c3", "c", "3", Rational(1)}, {"a3", "a", "3", Rational(1)}};
  lopsided.edges.pop_back();
  CHECK(generate(lopsided).solution_count() == 2);
  lopsided.edges = {{"a1", "a", "1", Rational(1)}, {"b1", "b", "1", Rational(1)},
                    {"c1", "c", "1", Rational(1)}, {"a2", "a", "2", Rational(1)},
                    {"a3", "a", "3", Rational(1)}};
  CHECK_THROWS_AS(generate(lopsided), StructuralError);

  GeneratorSpec paths;
  paths.family = Family::StPaths;
  paths.edges = k4.edges;
  paths.source = "a";
  paths.target = "d";
  CHECK(generate(paths).solution_count() == 5);
  paths.edges = {{"ab", "a", "b", Rational(1)}, {"cd", "c", "d", Rational(1)}};
  CHECK_THROWS_AS(generate(paths), StructuralError);
}

TEST_CASE("random explicit instances are reproducible") {
  GeneratorSpec spec;
  spec.family = Family::RandomExplicit;
  spec.seed = 7;
  spec.element_count = 8;
  spec.solution_count = 20;
  const Instance first = generate(spec);
  const Instance again = generate(spec);
  CHECK(first == again);
  CHECK(first.solution_count() == 20);
  for (const auto& element : first.elements()) {
    CHECK(element.cost >= 1);
    CHECK(element.cost <= 50);
  }
  spec.seed = 8;
  CHECK_FALSE(generate(spec) == first);

  spec.element_count = 3;
  spec.solution_count = 8;
  CHECK_THROWS_AS(generate(spec), StructuralError);
  spec.solution_count = 7;
  CHECK(generate(spec).solution_count() == 7);

  spec.max_solutions = 5;
  CHECK_THROWS_AS(generate(spec), ResourceError);
}

TEST_CASE("fixtures transcribe the worked examples") {
  const auto fixtures = worked_examples();
  REQUIRE(fixtures.size() == 4);
  CHECK(fixtures[0].objective() == ObjectiveKind::Sum);
  CHECK(fixtures[1].objective() == ObjectiveKind::Sum);
  CHECK(fixtures[2].objective() == ObjectiveKind::Product);
  CHECK(fixtures[3].objective() == ObjectiveKind::Bottleneck);
  CHECK(fixtures[2].cost(fixtures[2].index_of("z")) == 24);
  CHECK(analyze(fixtures[0]).optimal_value == 8);
  CHECK(analyze(fixtures[1]).optimal_value == 7);
  CHECK(analyze(fixtures[2]).optimal_value == 12);
  CHECK(analyze(fixtures[3]).optimal_value == 7);
  CHECK_THROWS_AS(worked_example("examp0"), StructuralError);
}
