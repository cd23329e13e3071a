#pragma once

// Instance files, tolerance reports and verdict reports.
//
// Instance file (JSON):
//   {
//     "name": "optional",
//     "objective": "sum" | "product" | "bottleneck",
//     "elements": [{"id": "v", "cost": "7/2"}, ...],
//     "solutions": [["v", "x"], ...]
//   }
// or, instead of "solutions" (and usually "elements"), a "generator" object
// with "family" plus the family's fields (see generators.hpp). Costs are
// integers or strings holding an exact rational; floating-point numbers are
// rejected.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cotol/analysis.hpp"
#include "cotol/generators.hpp"
#include "cotol/reference.hpp"
#include "cotol/theorems.hpp"
#include "cotol/tolerance.hpp"

namespace cotol {

/// Throws ParseError (with line/column for syntax errors and a JSON path for
/// schema errors) or StructuralError from instance validation.
Instance parse_instance(const std::string& text, const std::string& source = "<input>");
Instance load_instance(const std::filesystem::path& path);

/// Explicit form; parse_instance(instance_to_json(i)) == i.
std::string instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Resolves a fixture name (examp1..examp4) or else loads a file.
Instance load_instance_or_fixture(const std::string& name_or_path);

struct Query {
  ElementSet target;
  ToleranceKind kind;
  /// Print the target as an id list even when it has one element.
  bool as_set = false;
};

struct ToleranceRecord {
  std::vector<std::string> target;
  bool as_set = false;
  ToleranceKind kind;
  ExtendedValue value;
  std::string method;
  /// Precision annotation for numeric product results, e.g. "1e-6".
  std::optional<std::string> precision;
  /// Allocation attaining (or approaching) the value, keyed by element id.
  std::optional<Direction> witness_direction;
  std::vector<std::pair<std::string, Rational>> witness;
};

struct ToleranceReport {
  std::string instance;
  ObjectiveKind objective;
  Rational optimal_value;
  std::size_t solution_count = 0;
  std::size_t optimal_count = 0;
  std::vector<std::string> ute;
  std::vector<std::string> lte;
  std::vector<ToleranceRecord> records;
};

struct ReportOptions {
  /// Evaluate every query with the definition oracles instead of the formulas.
  bool use_oracle = false;
  Rational product_precision{1, 1000000};
};

/// Every element with every kind (set kinds applied to {e}).
std::vector<Query> default_queries(const Instance& instance);

ToleranceReport build_report(const Instance& instance, const std::vector<Query>& queries,
                             const ReportOptions& options = {});

std::string report_to_json(const ToleranceReport& report);
std::string report_table(const ToleranceReport& report);

std::string verdicts_to_json(const std::vector<PropertyVerdict>& verdicts);
std::string verdicts_table(const std::vector<PropertyVerdict>& verdicts);

/// "1e-6" for powers of ten, otherwise the rational.
std::string format_precision(const Rational& precision);

}  // namespace cotol
