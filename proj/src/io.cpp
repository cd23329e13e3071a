#include "cotol/io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cotol/errors.hpp"

namespace cotol {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& source, const std::string& path,
                               const std::string& message) {
  throw ParseError(source + ": " + path + ": " + message);
}

void check_keys(const json& object, const std::set<std::string>& allowed, const std::string& source,
                const std::string& path) {
  if (!object.is_object()) schema_error(source, path, "expected an object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.count(key)) schema_error(source, path, "unknown field \"" + key + "\"");
  }
}

const json& require(const json& object, const std::string& key, const std::string& source,
                    const std::string& path) {
  const auto at = object.find(key);
  if (at == object.end()) schema_error(source, path, "missing field \"" + key + "\"");
  return *at;
}

std::string as_string(const json& value, const std::string& source, const std::string& path) {
  if (!value.is_string()) schema_error(source, path, "expected a string");
  return value.get<std::string>();
}

Rational as_rational(const json& value, const std::string& source, const std::string& path) {
  if (value.is_number_float()) {
    schema_error(source, path, "floating-point numbers are not accepted; write \"7/2\" or an integer");
  }
  if (value.is_number_integer()) return Rational(value.dump());
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const ParseError& error) {
      schema_error(source, path, error.what());
    }
  }
  schema_error(source, path, "expected an integer or a rational string");
}

template <typename T>
T as_unsigned(const json& value, const std::string& source, const std::string& path) {
  if (!value.is_number_unsigned()) schema_error(source, path, "expected a non-negative integer");
  return value.get<T>();
}

long as_long(const json& value, const std::string& source, const std::string& path) {
  if (!value.is_number_integer()) schema_error(source, path, "expected an integer");
  return value.get<long>();
}

std::vector<Element> parse_elements(const json& array, const std::string& source) {
  if (!array.is_array()) schema_error(source, "elements", "expected an array");
  std::vector<Element> elements;
  for (std::size_t i = 0; i < array.size(); ++i) {
    const std::string path = "elements[" + std::to_string(i) + "]";
    check_keys(array[i], {"id", "cost"}, source, path);
    elements.push_back({as_string(require(array[i], "id", source, path), source, path + ".id"),
                        as_rational(require(array[i], "cost", source, path), source, path + ".cost")});
  }
  return elements;
}

std::vector<std::vector<std::string>> parse_solutions(const json& array, const std::string& source) {
  if (!array.is_array()) schema_error(source, "solutions", "expected an array");
  std::vector<std::vector<std::string>> solutions;
  for (std::size_t i = 0; i < array.size(); ++i) {
    const std::string path = "solutions[" + std::to_string(i) + "]";
    if (!array[i].is_array()) schema_error(source, path, "expected an array of ids");
    std::vector<std::string> ids;
    for (std::size_t j = 0; j < array[i].size(); ++j) {
      ids.push_back(as_string(array[i][j], source, path + "[" + std::to_string(j) + "]"));
    }
    solutions.push_back(std::move(ids));
  }
  return solutions;
}

GeneratorSpec parse_generator(const json& object, const std::string& source) {
  const std::string path = "generator";
  check_keys(object,
             {"family", "seed", "element_count", "solution_count", "min_cost", "max_cost",
              "max_solutions", "edges", "source", "target"},
             source, path);
  GeneratorSpec spec;
  try {
    spec.family = parse_family(as_string(require(object, "family", source, path), source, path + ".family"));
  } catch (const ParseError& error) {
    schema_error(source, path + ".family", error.what());
  }
  if (object.contains("seed")) spec.seed = as_unsigned<std::uint64_t>(object["seed"], source, path + ".seed");
  if (object.contains("element_count")) {
    spec.element_count = as_unsigned<std::size_t>(object["element_count"], source, path + ".element_count");
  }
  if (object.contains("solution_count")) {
    spec.solution_count = as_unsigned<std::size_t>(object["solution_count"], source, path + ".solution_count");
  }
  if (object.contains("min_cost")) spec.min_cost = as_long(object["min_cost"], source, path + ".min_cost");
  if (object.contains("max_cost")) spec.max_cost = as_long(object["max_cost"], source, path + ".max_cost");
  if (object.contains("max_solutions")) {
    spec.max_solutions = as_unsigned<std::size_t>(object["max_solutions"], source, path + ".max_solutions");
  }
  if (object.contains("source")) spec.source = as_string(object["source"], source, path + ".source");
  if (object.contains("target")) spec.target = as_string(object["target"], source, path + ".target");
  if (object.contains("edges")) {
    const json& edges = object["edges"];
    if (!edges.is_array()) schema_error(source, path + ".edges", "expected an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const std::string edge_path = path + ".edges[" + std::to_string(i) + "]";
      check_keys(edges[i], {"id", "from", "to", "cost"}, source, edge_path);
      spec.edges.push_back(
          {as_string(require(edges[i], "id", source, edge_path), source, edge_path + ".id"),
           as_string(require(edges[i], "from", source, edge_path), source, edge_path + ".from"),
           as_string(require(edges[i], "to", source, edge_path), source, edge_path + ".to"),
           as_rational(require(edges[i], "cost", source, edge_path), source, edge_path + ".cost")});
    }
  }
  return spec;
}

std::string location(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  const std::size_t start = text.rfind('\n', byte > 1 ? byte - 2 : 0);
  const std::size_t from = start == std::string::npos ? 0 : start + 1;
  std::string context = text.substr(from, text.find('\n', from) - from);
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + context;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot write file");
  out << text;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

std::vector<std::string> ids_of(const Instance& instance, const ElementSet& set) {
  std::vector<std::string> ids;
  for (ElementIndex e : set) ids.push_back(instance.id(e));
  return ids;
}

std::string join(const std::vector<std::string>& parts, const char* separator = ",") {
  std::string out;
  for (const auto& part : parts) {
    if (!out.empty()) out += separator;
    out += part;
  }
  return out;
}

std::string target_text(const ToleranceRecord& record) {
  if (!record.as_set && record.target.size() == 1) return record.target.front();
  return "{" + join(record.target) + "}";
}

}  // namespace

Instance parse_instance(const std::string& text, const std::string& source) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& error) {
    throw ParseError(source + ": " + location(text, error.byte) + ": syntax error");
  }
  check_keys(document, {"name", "objective", "elements", "solutions", "generator"}, source, "$");
  ObjectiveKind objective;
  try {
    objective = parse_objective(as_string(require(document, "objective", source, "$"), source, "objective"));
  } catch (const ParseError& error) {
    schema_error(source, "objective", error.what());
  }
  const std::string name = document.contains("name") ? as_string(document["name"], source, "name") : "";
  std::vector<Element> elements;
  if (document.contains("elements")) elements = parse_elements(document["elements"], source);

  const bool has_solutions = document.contains("solutions");
  const bool has_generator = document.contains("generator");
  if (has_solutions == has_generator) {
    schema_error(source, "$", "exactly one of \"solutions\" and \"generator\" is required");
  }
  if (has_solutions) {
    return Instance(std::move(elements), parse_solutions(document["solutions"], source), objective, name);
  }
  GeneratorSpec spec = parse_generator(document["generator"], source);
  spec.objective = objective;
  spec.name = name;
  spec.elements = std::move(elements);
  return generate(spec);
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_file(path), path.string());
}

std::string instance_to_json(const Instance& instance) {
  ordered_json document;
  if (!instance.name().empty()) document["name"] = instance.name();
  document["objective"] = std::string(to_string(instance.objective()));
  document["elements"] = ordered_json::array();
  for (const Element& element : instance.elements()) {
    document["elements"].push_back({{"id", element.id}, {"cost", to_string(element.cost)}});
  }
  document["solutions"] = ordered_json::array();
  for (const ElementSet& solution : instance.solutions()) {
    document["solutions"].push_back(ids_of(instance, solution));
  }
  return document.dump(2) + "\n";
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_file(path, instance_to_json(instance));
}

Instance load_instance_or_fixture(const std::string& name_or_path) {
  if (!std::filesystem::exists(name_or_path)) {
    for (const Instance& fixture : worked_examples()) {
      if (fixture.name() == name_or_path) return fixture;
    }
  }
  return load_instance(name_or_path);
}

std::vector<Query> default_queries(const Instance& instance) {
  std::vector<Query> queries;
  for (ElementIndex e = 0; e < instance.element_count(); ++e) {
    for (ToleranceKind kind : {ToleranceKind::SingleUpper, ToleranceKind::SingleLower,
                               ToleranceKind::UpperRegular, ToleranceKind::UpperReverse,
                               ToleranceKind::LowerRegular, ToleranceKind::LowerReverse}) {
      queries.push_back({{e}, kind, false});
    }
  }
  return queries;
}

std::string format_precision(const Rational& precision) {
  Rational scaled = precision;
  int exponent = 0;
  while (scaled < 1 && exponent < 30) {
    scaled *= 10;
    ++exponent;
  }
  if (scaled == 1) return "1e-" + std::to_string(exponent);
  return to_string(precision);
}

ToleranceReport build_report(const Instance& instance, const std::vector<Query>& queries,
                             const ReportOptions& options) {
  const AnalysisCache cache = analyze(instance);
  ToleranceReport report;
  report.instance = instance.name();
  report.objective = instance.objective();
  report.optimal_value = cache.optimal_value;
  report.solution_count = instance.solution_count();
  report.optimal_count = cache.optimal_set.size();
  report.ute = ids_of(instance, cache.ute);
  report.lte = ids_of(instance, cache.lte);

  SearchOptions search;
  search.product_precision = options.product_precision;
  OracleConfig oracle;
  oracle.product_precision = options.product_precision;
  const std::string precision = format_precision(options.product_precision);

  for (const Query& query : queries) {
    const ElementSet subset = normalize_subset(instance, query.target);
    if (is_single_kind(query.kind) && subset.size() != 1) {
      throw DomainError("kind " + std::string(to_string(query.kind)) +
                        " takes a single element, got {" + join(ids_of(instance, subset)) + "}");
    }
    ToleranceRecord record;
    record.target = ids_of(instance, subset);
    record.as_set = query.as_set;
    record.kind = query.kind;
    if (options.use_oracle) {
      record.value = oracle_set_tolerance(instance, subset, query.kind, oracle);
      record.method = "oracle";
      if (instance.objective() == ObjectiveKind::Product && !is_single_kind(query.kind)) {
        record.precision = precision;
      }
    } else {
      ToleranceResult result = compute_tolerance(instance, cache, query.kind, subset, search);
      record.value = result.value;
      record.method = std::string(to_string(result.method));
      if (result.method == Method::NumericSearch) record.precision = precision;
      if (result.witness) {
        record.witness_direction = result.witness->direction;
        for (const auto& [e, delta] : result.witness->deltas) {
          record.witness.emplace_back(instance.id(e), delta);
        }
      }
    }
    report.records.push_back(std::move(record));
  }
  return report;
}

std::string report_to_json(const ToleranceReport& report) {
  ordered_json document;
  document["instance"] = {{"name", report.instance},
                          {"objective", std::string(to_string(report.objective))},
                          {"optimal_value", to_string(report.optimal_value)},
                          {"solutions", report.solution_count},
                          {"optimal_solutions", report.optimal_count},
                          {"ute", report.ute},
                          {"lte", report.lte}};
  document["records"] = ordered_json::array();
  for (const ToleranceRecord& record : report.records) {
    ordered_json entry;
    if (!record.as_set && record.target.size() == 1) {
      entry["target"] = record.target.front();
    } else {
      entry["target"] = record.target;
    }
    entry["kind"] = std::string(to_string(record.kind));
    entry["value"] = record.value.to_string();
    entry["method"] = record.method;
    if (record.precision) entry["precision"] = "±" + *record.precision;
    if (record.witness_direction) {
      ordered_json deltas = ordered_json::object();
      for (const auto& [id, delta] : record.witness) deltas[id] = to_string(delta);
      entry["witness"] = {
          {"direction", *record.witness_direction == Direction::Increase ? "increase" : "decrease"},
          {"deltas", deltas}};
    }
    document["records"].push_back(std::move(entry));
  }
  return document.dump(2) + "\n";
}

std::string report_table(const ToleranceReport& report) {
  std::ostringstream out;
  out << "instance " << (report.instance.empty() ? "<unnamed>" : report.instance) << " ("
      << to_string(report.objective) << "): f = " << to_string(report.optimal_value) << ", "
      << report.optimal_count << " of " << report.solution_count << " solutions optimal\n";
  out << "  ute = {" << join(report.ute) << "}, lte = {" << join(report.lte) << "}\n\n";
  std::size_t target_width = 6;
  for (const auto& record : report.records) target_width = std::max(target_width, target_text(record).size());
  out << std::left << std::setw(static_cast<int>(target_width) + 2) << "target" << std::setw(15)
      << "kind" << std::setw(20) << "value"
      << "method\n";
  for (const auto& record : report.records) {
    std::string value = record.value.to_string();
    if (record.precision) value += " ±" + *record.precision;
    out << std::left << std::setw(static_cast<int>(target_width) + 2) << target_text(record)
        << std::setw(15) << to_string(record.kind) << std::setw(20) << value << record.method << "\n";
  }
  return out.str();
}

std::string verdicts_to_json(const std::vector<PropertyVerdict>& verdicts) {
  ordered_json document;
  document["passed"] = all_passed(verdicts);
  document["properties"] = ordered_json::array();
  for (const PropertyVerdict& verdict : verdicts) {
    ordered_json entry;
    entry["id"] = verdict.id;
    entry["statement"] = verdict.statement;
    entry["status"] = verdict.passed() ? "pass" : "fail";
    entry["instances_checked"] = verdict.instances_checked;
    entry["violations"] = ordered_json::array();
    for (const Violation& violation : verdict.violations) {
      entry["violations"].push_back({{"fingerprint", violation.fingerprint},
                                     {"instance", violation.instance},
                                     {"subset", violation.subset},
                                     {"observed", violation.observed}});
    }
    document["properties"].push_back(std::move(entry));
  }
  return document.dump(2) + "\n";
}

std::string verdicts_table(const std::vector<PropertyVerdict>& verdicts) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& verdict : verdicts) width = std::max(width, verdict.id.size());
  for (const auto& verdict : verdicts) {
    out << (verdict.passed() ? "pass  " : "FAIL  ") << std::left
        << std::setw(static_cast<int>(width) + 2) << verdict.id << verdict.instances_checked
        << " checked";
    if (!verdict.passed()) out << ", " << verdict.violations.size() << " violations";
    out << "\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(verdict.violations.size(), 5); ++i) {
      const Violation& violation = verdict.violations[i];
      out << "        " << violation.instance << " [" << violation.fingerprint << "] {"
          << join(violation.subset) << "}: " << violation.observed << "\n";
    }
  }
  return out.str();
}

}  // namespace cotol
