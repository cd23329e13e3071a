// cotol: tolerance reports, property verification and fixture export.
//
// Exit status: 0 success, 1 property violation, 2 input error, 3 resource limit.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cotol/errors.hpp"
#include "cotol/generators.hpp"
#include "cotol/io.hpp"
#include "cotol/theorems.hpp"

namespace {

using namespace cotol;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;
constexpr int kResourceLimit = 3;

struct AnalyzeArgs {
  std::string instance;
  std::vector<std::string> elements;
  std::vector<std::string> sets;
  std::vector<std::string> kinds;
  bool oracle = false;
  std::string precision = "1/1000000";
  std::string out;
  bool json = false;
};

struct VerifyArgs {
  std::vector<std::string> files;
  bool examples = false;
  std::size_t random = 0;
  std::uint64_t seed = 1;
  std::size_t subsets = 4;
  std::string objective = "all";
  bool no_oracle = false;
  std::string out;
  bool json = false;
};

std::vector<std::string> split_ids(const std::string& text) {
  std::vector<std::string> ids;
  std::stringstream stream(text);
  std::string id;
  while (std::getline(stream, id, ',')) {
    if (!id.empty()) ids.push_back(id);
  }
  return ids;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error(path + ": cannot write file");
}

int run_analyze(const AnalyzeArgs& args) {
  const Instance instance = load_instance_or_fixture(args.instance);
  std::vector<ToleranceKind> kinds;
  for (const auto& kind : args.kinds) kinds.push_back(parse_tolerance_kind(kind));

  std::vector<Query> queries;
  for (const auto& id : args.elements) {
    const ElementSet target{instance.index_of(id)};
    if (kinds.empty()) {
      for (const Query& query : default_queries(instance)) {
        if (query.target == target) queries.push_back(query);
      }
    }
    for (ToleranceKind kind : kinds) queries.push_back({target, kind, false});
  }
  for (const auto& text : args.sets) {
    const ElementSet target = instance.resolve(split_ids(text));
    if (target.empty()) throw DomainError("--set needs at least one id");
    if (kinds.empty()) {
      for (ToleranceKind kind : {ToleranceKind::UpperRegular, ToleranceKind::UpperReverse,
                                 ToleranceKind::LowerRegular, ToleranceKind::LowerReverse}) {
        queries.push_back({target, kind, true});
      }
    }
    for (ToleranceKind kind : kinds) queries.push_back({target, kind, true});
  }
  if (args.elements.empty() && args.sets.empty()) {
    for (const Query& query : default_queries(instance)) {
      if (kinds.empty() || std::find(kinds.begin(), kinds.end(), query.kind) != kinds.end()) {
        queries.push_back(query);
      }
    }
  }

  ReportOptions options;
  options.use_oracle = args.oracle;
  options.product_precision = parse_rational(args.precision);
  if (options.product_precision <= 0) throw DomainError("--precision must be positive");
  const ToleranceReport report = build_report(instance, queries, options);
  if (!args.out.empty()) write_text(args.out, report_to_json(report));
  std::cout << (args.json ? report_to_json(report) : report_table(report));
  return kOk;
}

int run_verify(const VerifyArgs& args) {
  std::vector<Instance> instances;
  for (const auto& file : args.files) instances.push_back(load_instance_or_fixture(file));
  if (args.examples) {
    for (Instance& fixture : worked_examples()) instances.push_back(std::move(fixture));
  }
  if (args.random > 0) {
    std::vector<ObjectiveKind> objectives;
    if (args.objective == "all") {
      objectives = {ObjectiveKind::Sum, ObjectiveKind::Product, ObjectiveKind::Bottleneck};
    } else {
      objectives = {parse_objective(args.objective)};
    }
    for (ObjectiveKind objective : objectives) {
      for (Instance& instance : random_suite(objective, args.random, args.seed)) {
        instances.push_back(std::move(instance));
      }
    }
  }
  if (instances.empty()) throw DomainError("nothing to verify: give files, --examples or --random");

  HarnessOptions options;
  options.oracle_checks = !args.no_oracle;
  const auto verdicts = check_all(instances, args.subsets, args.seed, options);
  if (!args.out.empty()) write_text(args.out, verdicts_to_json(verdicts));
  if (args.json) {
    std::cout << verdicts_to_json(verdicts);
  } else {
    std::cout << verdicts_table(verdicts);
    std::cout << instances.size() << " instances, " << args.subsets << " subsets each: "
              << (all_passed(verdicts) ? "all properties hold" : "VIOLATIONS FOUND") << "\n";
  }
  return all_passed(verdicts) ? kOk : kViolation;
}

int run_examples(const std::string& directory) {
  std::filesystem::create_directories(directory);
  for (const Instance& fixture : worked_examples()) {
    const std::filesystem::path path = std::filesystem::path(directory) / (fixture.name() + ".json");
    save_instance(fixture, path);
    std::cout << path.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper and lower tolerances of combinatorial minimization problems"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Compute tolerances for one instance");
  analyze_cmd->add_option("instance", analyze.instance, "Instance file or fixture name (examp1..examp4)")
      ->required();
  analyze_cmd->add_option("--element", analyze.elements, "Element id (repeatable)");
  analyze_cmd->add_option("--set", analyze.sets, "Comma-separated element ids (repeatable)");
  analyze_cmd->add_option("--kind", analyze.kinds,
                          "upper, lower, upper-regular, upper-reverse, lower-regular, lower-reverse");
  analyze_cmd->add_flag("--oracle", analyze.oracle, "Use the definition oracles");
  analyze_cmd->add_option("--precision", analyze.precision,
                          "Product search precision as an exact rational (default 1/1000000)");
  analyze_cmd->add_option("--out", analyze.out, "Write the JSON report to this file");
  analyze_cmd->add_flag("--json", analyze.json, "Print JSON instead of the table");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check every tolerance property");
  verify_cmd->add_option("files", verify.files, "Instance files or fixture names");
  verify_cmd->add_flag("--examples", verify.examples, "Include the four worked examples");
  verify_cmd->add_option("--random", verify.random, "Random instances per objective");
  verify_cmd->add_option("--seed", verify.seed, "Seed for instances and subset sampling");
  verify_cmd->add_option("--subsets", verify.subsets, "Sampled subsets per instance");
  verify_cmd->add_option("--objective", verify.objective, "sum, product, bottleneck or all");
  verify_cmd->add_flag("--no-oracle", verify.no_oracle, "Skip formula-versus-oracle checks");
  verify_cmd->add_option("--out", verify.out, "Write the JSON verdicts to this file");
  verify_cmd->add_flag("--json", verify.json, "Print JSON instead of the table");

  std::string examples_dir;
  auto* examples_cmd = app.add_subcommand("examples", "Write the worked examples as instance files");
  examples_cmd->add_option("directory", examples_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int status = app.exit(error);
    return status == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze);
    if (*verify_cmd) return run_verify(verify);
    return run_examples(examples_dir);
  } catch (const ResourceError& error) {
    std::cerr << "cotol: resource limit: " << error.what() << "\n";
    return kResourceLimit;
  } catch (const std::exception& error) {
    std::cerr << "cotol: " << error.what() << "\n";
    return kInputError;
  }
}
