#include "doctest.h"

#include <cmath>

#include "cotol/analysis.hpp"
#include "cotol/errors.hpp"
#include "cotol/generators.hpp"
#include "cotol/reference.hpp"

using namespace cotol;

namespace {

ElementSet ids(const Instance& instance, std::vector<std::string> names) {
  return instance.resolve(names);
}

ExtendedValue v(long value) { return ExtendedValue(value); }
const ExtendedValue inf = ExtendedValue::infinity();

bool near(const ExtendedValue& value, Real expected, Real tolerance = 1e-6L) {
  return value.is_finite() && std::fabs(value.to_real() - expected) <= tolerance;
}

}  // namespace

TEST_CASE("single oracles on the fixtures") {
  const Instance second = worked_example("examp2");
  CHECK(oracle_single_lower(second, second.index_of("z")) == v(1));
  CHECK(oracle_single_upper(second, second.index_of("v")) == v(0));
  CHECK(oracle_single_upper(second, second.index_of("z")) == inf);

  const Instance first = worked_example("examp1");
  CHECK(oracle_single_lower(first, first.index_of("y")) == v(2));
  CHECK(oracle_single_upper(first, first.index_of("w")) == v(2));

  const Instance fourth = worked_example("examp4");
  CHECK(oracle_single_upper(fourth, fourth.index_of("w")) == v(5));
  CHECK(oracle_single_lower(fourth, fourth.index_of("y")) == v(0));
  CHECK(oracle_single_lower(fourth, fourth.index_of("w")) == inf);

  const Instance third = worked_example("examp3");
  CHECK(oracle_single_lower(third, third.index_of("z")) == v(12));
}

TEST_CASE("set oracles on the fixtures") {
  const Instance second = worked_example("examp2");
  CHECK(oracle_set_tolerance(second, ids(second, {"v", "w"}), ToleranceKind::UpperRegular) == v(2));
  CHECK(oracle_set_tolerance(second, ids(second, {"v", "w"}), ToleranceKind::UpperReverse) == v(0));
  CHECK(oracle_set_tolerance(second, ids(second, {"y", "z"}), ToleranceKind::LowerRegular) == v(1));
  CHECK(oracle_set_tolerance(second, ids(second, {"y", "z"}), ToleranceKind::LowerReverse) == v(0));
  CHECK(oracle_set_tolerance(second, ids(second, {"z"}), ToleranceKind::UpperReverse) == inf);

  const Instance third = worked_example("examp3");
  CHECK(near(oracle_set_tolerance(third, ids(third, {"v", "w"}), ToleranceKind::UpperRegular), 5));
  CHECK(oracle_set_tolerance(third, ids(third, {"x", "y"}), ToleranceKind::LowerReverse) == v(0));
  CHECK(near(oracle_set_tolerance(third, ids(third, {"v", "z"}), ToleranceKind::LowerRegular), 12));

  const Instance fourth = worked_example("examp4");
  CHECK(oracle_set_tolerance(fourth, ids(fourth, {"y", "z"}), ToleranceKind::LowerReverse) == v(0));
  CHECK(oracle_set_tolerance(fourth, ids(fourth, {"w", "x"}), ToleranceKind::UpperReverse) == v(4));
  CHECK(oracle_set_tolerance(fourth, ids(fourth, {"w", "x"}), ToleranceKind::UpperRegular) == v(11));
  CHECK(oracle_set_tolerance(fourth, ids(fourth, {"w", "x"}), ToleranceKind::LowerRegular) == inf);
}

TEST_CASE("older lower semantics") {
  const Instance second = worked_example("examp2");
  CHECK(oracle_current_definition(second, ids(second, {"z"}), ToleranceKind::LowerRegular) == v(1));
  CHECK(oracle_current_definition(second, ids(second, {"y", "z"}), ToleranceKind::LowerRegular) ==
        v(1));
  const Instance fourth = worked_example("examp4");
  CHECK_THROWS_AS(
      oracle_current_definition(fourth, ids(fourth, {"y"}), ToleranceKind::LowerRegular),
      DomainError);
  // Keeping both optima optimal lets c(y) fall from 7 to 3.
  CHECK(oracle_preservation_lower(fourth, fourth.index_of("y")) == v(4));
  // Keeping only the optimal value makes every upper tolerance of examp2 infinite.
  for (ElementIndex e = 0; e < second.element_count(); ++e) {
    CHECK(oracle_value_upper(second, e) == inf);
  }
}

TEST_CASE("oracle limits") {
  const Instance second = worked_example("examp2");
  OracleConfig tight;
  tight.max_subset_size = 1;
  CHECK_THROWS_AS(oracle_set_tolerance(second, ids(second, {"v", "w"}), ToleranceKind::UpperRegular,
                                       tight),
                  ResourceError);
  CHECK_THROWS_AS(oracle_set_tolerance(second, {}, ToleranceKind::UpperRegular), DomainError);
}
