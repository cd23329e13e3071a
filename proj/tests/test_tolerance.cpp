#include "doctest.h"

#include "cotol/analysis.hpp"
#include "cotol/errors.hpp"
#include "cotol/generators.hpp"
#include "cotol/tolerance.hpp"

using namespace cotol;

namespace {

struct Fixture {
  Instance instance;
  AnalysisCache cache;

  explicit Fixture(std::string_view name)
      : instance(worked_example(name)), cache(analyze(instance)) {}

  ElementIndex at(const std::string& id) const { return instance.index_of(id); }
  ElementSet set(std::vector<std::string> ids) const { return instance.resolve(ids); }
};

ExtendedValue v(long value) { return ExtendedValue(value); }
const ExtendedValue inf = ExtendedValue::infinity();

bool near(const ExtendedValue& value, Real expected, Real tolerance = 1e-6L) {
  return value.is_finite() && std::fabs(value.to_real() - expected) <= tolerance;
}

}  // namespace

TEST_CASE("single upper tolerances") {
  const Fixture second("examp2");
  for (const char* id : {"v", "w", "x", "y"}) {
    CHECK(single_upper(second.instance, second.cache, second.at(id)).value == v(0));
  }
  CHECK(single_upper(second.instance, second.cache, second.at("z")).value == inf);

  const Fixture first("examp1");
  const auto w = single_upper(first.instance, first.cache, first.at("w"));
  CHECK(w.value == v(2));
  CHECK(w.method == Method::Formula);
  REQUIRE(w.witness);
  CHECK(w.witness->deltas.at(first.at("w")) == 2);

  const Fixture fourth("examp4");
  CHECK(single_upper(fourth.instance, fourth.cache, fourth.at("w")).value == v(5));
  CHECK(single_upper(fourth.instance, fourth.cache, fourth.at("x")).value == v(4));
  // y lies in every optimum and no solution avoids it except {z}
  CHECK(single_upper(fourth.instance, fourth.cache, fourth.at("y")).value == v(1));

  const Fixture third("examp3");
  CHECK(single_upper(third.instance, third.cache, third.at("v")).value == v(0));
  CHECK(single_upper(third.instance, third.cache, third.at("z")).value == inf);
}

TEST_CASE("single lower tolerances") {
  const Fixture second("examp2");
  CHECK(single_lower(second.instance, second.cache, second.at("z")).value == v(1));
  CHECK(single_lower(second.instance, second.cache, second.at("v")).value == v(0));

  const Fixture first("examp1");
  CHECK(single_lower(first.instance, first.cache, first.at("y")).value == v(2));

  const Fixture fourth("examp4");
  CHECK(single_lower(fourth.instance, fourth.cache, fourth.at("y")).value == v(0));
  CHECK(smallest_other_max(fourth.instance, fourth.at("y")) == v(2));
  CHECK(single_lower(fourth.instance, fourth.cache, fourth.at("w")).value == inf);
  CHECK(smallest_other_max(fourth.instance, fourth.at("w")) == v(7));
  // {z} is a solution on its own: g(z) = -inf, so c(z) may drop to c*
  CHECK(smallest_other_max(fourth.instance, fourth.at("z")).is_negative_infinite());
  CHECK(single_lower(fourth.instance, fourth.cache, fourth.at("z")).value == v(1));

  const Fixture third("examp3");
  // (24 - 12) / 24 * 24
  CHECK(single_lower(third.instance, third.cache, third.at("z")).value == v(12));
  CHECK_THROWS_AS(smallest_other_max(third.instance, 0), UnsupportedObjective);
}

TEST_CASE("g(e) edge cases") {
  const Instance loose({{"a", Rational(1)}, {"b", Rational(2)}},
                       std::vector<std::vector<std::string>>{{"a"}}, ObjectiveKind::Bottleneck);
  CHECK(smallest_other_max(loose, 1).is_infinite());
  const AnalysisCache cache = analyze(loose);
  CHECK(single_lower(loose, cache, 1).value == inf);
}

TEST_CASE("product single lower without solutions through e is d_max") {
  const Instance loose({{"a", Rational(3)}, {"b", Rational(5, 2)}},
                       std::vector<std::vector<std::string>>{{"a"}}, ObjectiveKind::Product);
  const AnalysisCache cache = analyze(loose);
  CHECK(single_lower(loose, cache, 1).value == ExtendedValue(Rational(5, 2)));
}

TEST_CASE("regular set upper tolerance") {
  const Fixture second("examp2");
  const auto sum = set_upper_regular(second.instance, second.cache, second.set({"v", "w"}));
  CHECK(sum.value == v(2));
  CHECK(sum.method == Method::ExactSearch);
  REQUIRE(sum.witness);
  CHECK(sum.witness->total() == 2);
  CHECK(set_upper_regular(second.instance, second.cache, second.set({"z"})).value == inf);
  CHECK(set_upper_regular(second.instance, second.cache, second.set({"v"})).value == v(0));
  CHECK(set_upper_regular(second.instance, second.cache, second.set({"v", "z"})).value == inf);

  const Fixture third("examp3");
  const auto product = set_upper_regular(third.instance, third.cache, third.set({"v", "w"}));
  CHECK(product.method == Method::NumericSearch);
  CHECK(near(product.value, 5));

  const Fixture fourth("examp4");
  CHECK(set_upper_regular(fourth.instance, fourth.cache, fourth.set({"w", "x"})).value == v(11));
  CHECK(set_upper_regular(fourth.instance, fourth.cache, fourth.set({"w"})).value == v(5));

  CHECK_THROWS_AS(set_upper_regular(second.instance, second.cache, {}), DomainError);
}

TEST_CASE("reverse set upper tolerance") {
  const Fixture second("examp2");
  CHECK(set_upper_reverse(second.instance, second.cache, second.set({"v", "w"})).value == v(0));
  CHECK(set_upper_reverse(second.instance, second.cache, second.set({"z"})).value == inf);
  const Fixture fourth("examp4");
  CHECK(set_upper_reverse(fourth.instance, fourth.cache, fourth.set({"w", "x"})).value == v(4));

  const Fixture first("examp1");
  CHECK(set_upper_reverse(first.instance, first.cache, first.set({"w", "x"})).value == v(2));

  const Fixture third("examp3");
  CHECK(near(set_upper_reverse(third.instance, third.cache, third.set({"v", "w"})).value, 0));
}

TEST_CASE("product reverse set upper tolerance equalises the raised costs") {
  // One optimum {a,b} of cost 4, competitor {c} of cost 16: raise a and b to 4 each.
  const Instance instance({{"a", Rational(2)}, {"b", Rational(2)}, {"c", Rational(16)}},
                          std::vector<std::vector<std::string>>{{"a", "b"}, {"c"}},
                          ObjectiveKind::Product);
  const AnalysisCache cache = analyze(instance);
  const auto result = set_upper_reverse(instance, cache, ElementSet{0, 1});
  CHECK(near(result.value, 4));
  CHECK(near(set_upper_regular(instance, cache, ElementSet{0, 1}).value, 6));
}

TEST_CASE("regular set lower tolerance") {
  const Fixture second("examp2");
  CHECK(set_lower_regular(second.instance, second.cache, second.set({"y", "z"})).value == v(1));
  CHECK(set_lower_regular(second.instance, second.cache, second.set({"z"})).value == v(1));

  const Fixture fourth("examp4");
  CHECK(set_lower_regular(fourth.instance, fourth.cache, fourth.set({"w", "x"})).value == inf);
  CHECK(set_lower_regular(fourth.instance, fourth.cache, fourth.set({"y", "z"})).value == v(1));

  const Fixture third("examp3");
  CHECK(near(set_lower_regular(third.instance, third.cache, third.set({"z"})).value, 12));
  CHECK(near(set_lower_regular(third.instance, third.cache, third.set({"v", "z"})).value, 12));
}

TEST_CASE("product regular set lower tolerance of unused elements approaches d_max") {
  const Instance instance({{"a", Rational(3)}, {"b", Rational(5)}, {"c", Rational(7)}},
                          std::vector<std::vector<std::string>>{{"a"}, {"b"}},
                          ObjectiveKind::Product);
  const AnalysisCache cache = analyze(instance);
  // c is unused (7), b may shrink to 3 (2)
  CHECK(near(set_lower_regular(instance, cache, ElementSet{1, 2}).value, 9));
}

TEST_CASE("reverse set lower tolerance") {
  const Fixture second("examp2");
  CHECK(set_lower_reverse(second.instance, second.cache, second.set({"y", "z"})).value == v(0));
  const Fixture fourth("examp4");
  CHECK(set_lower_reverse(fourth.instance, fourth.cache, fourth.set({"y", "z"})).value == v(0));
  CHECK(set_lower_reverse(fourth.instance, fourth.cache, fourth.set({"z"})).value == v(1));
  CHECK(set_lower_reverse(fourth.instance, fourth.cache, fourth.set({"w"})).value == inf);
  const Fixture third("examp3");
  CHECK(set_lower_reverse(third.instance, third.cache, third.set({"x", "y"})).value == v(0));
}

TEST_CASE("dispatch") {
  const Fixture second("examp2");
  CHECK(compute_tolerance(second.instance, second.cache, ToleranceKind::SingleLower,
                          {second.at("z")})
            .value == v(1));
  CHECK_THROWS_AS(compute_tolerance(second.instance, second.cache, ToleranceKind::SingleUpper,
                                    second.set({"v", "w"})),
                  DomainError);
  CHECK(parse_tolerance_kind("lower-reverse") == ToleranceKind::LowerReverse);
  CHECK_THROWS_AS(parse_tolerance_kind("sideways"), ParseError);
}
