// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Pinned tolerances: product values within 1e-6, everything else exact.
// Sizes: 500 random instances per objective (3..10 elements, up to 30
// solutions), |E| <= 4.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "cotol/generators.hpp"
#include "cotol/io.hpp"
#include "cotol/reference.hpp"
#include "cotol/theorems.hpp"
#include "cotol/tolerance.hpp"

using namespace cotol;
namespace fs = std::filesystem;

namespace {

const Rational kProductSlack(1, 1000000);
constexpr std::size_t kInstancesPerObjective = 500;
constexpr double kOracleBudgetSeconds = 120;
constexpr double kExampleBudgetSeconds = 1;

constexpr ObjectiveKind kObjectives[] = {ObjectiveKind::Sum, ObjectiveKind::Product,
                                         ObjectiveKind::Bottleneck};
constexpr ToleranceKind kSetKinds[] = {ToleranceKind::UpperRegular, ToleranceKind::UpperReverse,
                                       ToleranceKind::LowerRegular, ToleranceKind::LowerReverse};

bool close(ObjectiveKind objective, const ExtendedValue& a, const ExtendedValue& b) {
  if (objective != ObjectiveKind::Product || !a.is_finite() || !b.is_finite()) return a == b;
  return abs(a.value() - b.value()) <= kProductSlack;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Half the suite with costs 1..50, half with 1..5 so that ties are common.
std::vector<Instance> suite(ObjectiveKind objective, std::uint64_t seed) {
  std::vector<Instance> instances = random_suite(objective, kInstancesPerObjective / 2, seed, 50);
  for (Instance& instance : random_suite(objective, kInstancesPerObjective / 2, seed + 100000, 5)) {
    instances.push_back(std::move(instance));
  }
  return instances;
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int number, const char* title, const Outcome& outcome) {
  std::string detail = outcome.detail;
  while (!detail.empty() && (detail.back() == ' ' || detail.back() == ';')) detail.pop_back();
  std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << number << " (" << title
            << "): " << detail << std::endl;
}

Outcome guarded(const std::function<Outcome()>& body) {
  try {
    return body();
  } catch (const std::exception& error) {
    return {false, std::string("exception: ") + error.what()};
  }
}

Outcome example_values() {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  std::ostringstream detail;
  auto expect = [&](const std::string& what, bool ok) {
    if (!ok) {
      outcome.pass = false;
      detail << "[" << what << " wrong] ";
    }
  };

  const Instance examp2 = worked_example("examp2");
  const AnalysisCache cache2 = analyze(examp2);
  const ExtendedValue sum_pair = set_upper_regular(examp2, cache2, examp2.resolve({"v", "w"})).value;
  expect("sum u'({v,w})", sum_pair == ExtendedValue(2));
  for (const char* id : {"v", "w", "x", "y"}) {
    expect(std::string("u'(") + id + ")", single_upper(examp2, cache2, examp2.index_of(id)).value == 0);
  }
  expect("u'(z)", single_upper(examp2, cache2, examp2.index_of("z")).value.is_infinite());

  const Instance examp3 = worked_example("examp3");
  const ExtendedValue product_pair =
      set_upper_regular(examp3, analyze(examp3), examp3.resolve({"v", "w"})).value;
  expect("product u'({v,w})", close(ObjectiveKind::Product, product_pair, ExtendedValue(5)));

  const Instance examp4 = worked_example("examp4");
  const ElementIndex y = examp4.index_of("y");
  const ExtendedValue lower_y = single_lower(examp4, analyze(examp4), y).value;
  const ExtendedValue g_y = smallest_other_max(examp4, y);
  const ExtendedValue rejected = oracle_preservation_lower(examp4, y);
  expect("single_lower(y)", lower_y == 0);
  expect("g(y)", g_y == 2);
  expect("rejected extension", rejected == 4);

  const double elapsed = seconds_since(start);
  expect("time budget", elapsed < kExampleBudgetSeconds);
  detail << "sum u'({v,w})=" << sum_pair << ", product u'({v,w})=" << product_pair
         << ", sum singles v..y=0 z=inf, bottleneck single_lower(y)=" << lower_y << " g(y)=" << g_y
         << " rejected=" << rejected << ", " << elapsed << " s";
  outcome.detail = detail.str();
  return outcome;
}

Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  std::ostringstream detail;
  for (ObjectiveKind objective : kObjectives) {
    std::size_t checks = 0;
    std::size_t mismatches = 0;
    std::string first;
    const std::vector<Instance> instances = suite(objective, 7001);
    for (const Instance& instance : instances) {
      const AnalysisCache cache = analyze(instance);
      for (const ElementSet& subset : sample_subsets(instance, cache, 2, 31)) {
        auto compare = [&](ToleranceKind kind, const ElementSet& target) {
          const ExtendedValue formula = compute_tolerance(instance, cache, kind, target).value;
          const ExtendedValue oracle = oracle_set_tolerance(instance, target, kind);
          ++checks;
          if (!close(objective, formula, oracle)) {
            if (mismatches++ == 0) {
              first = instance.name() + " " + std::string(to_string(kind)) + " formula=" +
                      formula.to_string() + " oracle=" + oracle.to_string();
            }
          }
        };
        for (ToleranceKind kind : kSetKinds) compare(kind, subset);
        for (ElementIndex e : subset) {
          compare(ToleranceKind::SingleUpper, {e});
          compare(ToleranceKind::SingleLower, {e});
        }
      }
    }
    if (mismatches > 0) outcome.pass = false;
    detail << to_string(objective) << " " << instances.size() << " instances / " << checks
           << " checks / " << mismatches << " mismatches" << (first.empty() ? "" : " (" + first + ")")
           << "; ";
  }
  const double elapsed = seconds_since(start);
  if (elapsed > kOracleBudgetSeconds) outcome.pass = false;
  detail << elapsed << " s";
  outcome.detail = detail.str();
  return outcome;
}

Outcome theorem_suite() {
  Outcome outcome;
  std::ostringstream detail;
  HarnessOptions options;
  options.oracle_checks = false;  // criterion 2 covers formula-versus-oracle
  for (ObjectiveKind objective : kObjectives) {
    const std::vector<Instance> instances = suite(objective, 9001);
    const std::size_t pairs = instances.size() * 2;
    const auto verdicts = check_all(instances, 2, 5, options);
    std::size_t failed = 0;
    for (const auto& verdict : verdicts) {
      if (!verdict.passed()) {
        ++failed;
        detail << "[" << verdict.id << ": " << verdict.violations.front().observed << "] ";
      }
    }
    if (failed > 0 || pairs < 1000) outcome.pass = false;
    detail << to_string(objective) << " " << pairs << " pairs, " << verdicts.size()
           << " properties, " << failed << " failing; ";
  }
  outcome.detail = detail.str();
  return outcome;
}

Outcome consistency() {
  Outcome outcome;
  std::ostringstream detail;
  for (ObjectiveKind objective : kObjectives) {
    std::size_t set_cases = 0;
    std::size_t single_cases = 0;
    std::size_t zero_cases = 0;
    std::size_t failures = 0;
    std::mt19937_64 rng(4242);
    for (const Instance& instance : suite(objective, 11001)) {
      const AnalysisCache cache = analyze(instance);
      // E drawn from the complement of one optimum, so E is in lts.
      const SolutionIndex s = cache.optimal_set[bounded(rng, cache.optimal_set.size())];
      ElementSet pool;
      for (ElementIndex e = 0; e < instance.element_count(); ++e) {
        if (!instance.contains(s, e)) pool.push_back(e);
      }
      if (!pool.empty()) {
        const std::size_t size = std::min<std::size_t>(1 + bounded(rng, 4), pool.size());
        for (std::size_t j = 0; j < size; ++j) std::swap(pool[j], pool[j + bounded(rng, pool.size() - j)]);
        ElementSet subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(subset.begin(), subset.end());
        ++set_cases;
        for (ToleranceKind kind : {ToleranceKind::LowerRegular, ToleranceKind::LowerReverse}) {
          if (!close(objective, compute_tolerance(instance, cache, kind, subset).value,
                     oracle_current_definition(instance, subset, kind))) {
            ++failures;
          }
        }
      }
      for (ElementIndex e = 0; e < instance.element_count(); ++e) {
        const ExtendedValue lower = single_lower(instance, cache, e).value;
        if (cache.in_lte(e)) {
          ++single_cases;
          if (!close(objective, lower, oracle_current_definition(instance, {e}, ToleranceKind::SingleLower))) {
            ++failures;
          }
        } else if (objective != ObjectiveKind::Bottleneck) {
          ++zero_cases;
          if (lower != 0) ++failures;
        }
      }
    }
    if (failures > 0 || set_cases < 300) outcome.pass = false;
    detail << to_string(objective) << " " << set_cases << " lts sets, " << single_cases
           << " lte elements, " << zero_cases << " non-lte zeros, " << failures << " failures; ";
  }
  outcome.detail = detail.str();
  return outcome;
}

Outcome counterexamples() {
  Outcome outcome;
  std::ostringstream detail;
  for (const char* name : {"examp2", "examp3"}) {
    const Instance instance = worked_example(name);
    const AnalysisCache cache = analyze(instance);
    const ElementSet pair = instance.resolve({"v", "w"});
    const ExtendedValue regular = set_upper_regular(instance, cache, pair).value;
    const ExtendedValue oracle = oracle_set_tolerance(instance, pair, ToleranceKind::UpperRegular);
    ExtendedValue sum = 0;
    for (ElementIndex e : pair) sum += single_upper(instance, cache, e).value;
    const bool gap = sum.is_finite() && regular.is_finite() &&
                     regular.value() > sum.value() + kProductSlack &&
                     close(instance.objective(), regular, oracle);
    if (!gap) outcome.pass = false;
    detail << name << " u'({v,w})=" << regular << " > " << sum << "; ";
  }

  // Closed forms for e outside every optimum, on generated instances.
  std::string witness;
  for (ObjectiveKind objective : kObjectives) {
    for (const Instance& instance : random_suite(objective, 50, 13001, 20)) {
      const AnalysisCache cache = analyze(instance);
      for (ElementIndex e = 0; e < instance.element_count() && witness.empty(); ++e) {
        if (cache.in_ute(e)) continue;
        const ExtendedValue avoiding = best_cost_over(instance, d_minus(instance, e));
        if (!avoiding.is_finite()) continue;
        const Rational& f = cache.optimal_value;
        Rational closed_form;
        switch (objective) {
          case ObjectiveKind::Sum: closed_form = avoiding.value() - f; break;
          case ObjectiveKind::Product: closed_form = (avoiding.value() - f) / f * instance.cost(e); break;
          case ObjectiveKind::Bottleneck: closed_form = avoiding.value() - instance.cost(e); break;
        }
        if (single_upper(instance, cache, e).value.is_infinite() &&
            oracle_single_upper(instance, e).is_infinite()) {
          witness = instance.name() + " element " + instance.id(e) + ": closed form " +
                    to_string(closed_form) + ", true value inf";
        }
      }
      if (!witness.empty()) break;
    }
  }
  if (witness.empty()) outcome.pass = false;
  detail << (witness.empty() ? "no closed-form failure found" : witness);
  outcome.detail = detail.str();
  return outcome;
}

int run(const std::string& arguments) {
  const std::string command = std::string(COTOL_CLI) + " " + arguments + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli_round_trip() {
  Outcome outcome;
  std::ostringstream detail;
  const fs::path dir = fs::temp_directory_path() / ("cotol_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const fs::path out = dir / "report.json";

  auto value_of = [&](const std::string& arguments, std::size_t record) -> std::string {
    if (run("analyze " + arguments + " --out " + out.string()) != 0) return "<exit status>";
    std::ifstream in(out);
    const auto document = nlohmann::json::parse(in);
    return document["records"][record]["value"].get<std::string>();
  };
  auto expect = [&](const std::string& what, const std::string& got, const std::string& want) {
    if (got != want) outcome.pass = false;
    detail << what << "=" << got << (got == want ? "" : " (want " + want + ")") << "; ";
  };

  if (run("examples " + dir.string()) != 0) {
    fs::remove_all(dir);
    return {false, "examples command failed"};
  }
  const std::string examp2 = (dir / "examp2.json").string();
  expect("sum u'({v,w})", value_of(examp2 + " --set v,w --kind upper-regular", 0), "2");
  expect("product u'({v,w})", value_of((dir / "examp3.json").string() + " --set v,w --kind upper-regular", 0), "5");
  for (std::size_t i = 0; i < 4; ++i) {
    expect("u'(" + std::string(1, "vwxy"[i]) + ")", value_of(examp2 + " --kind upper", i), "0");
  }
  expect("u'(z)", value_of(examp2 + " --kind upper", 4), "inf");
  expect("bottleneck lower(y)", value_of((dir / "examp4.json").string() + " --element y --kind lower", 0), "0");
  const int verify = run("verify --examples");
  if (verify != 0) outcome.pass = false;
  detail << "verify --examples exit " << verify;
  fs::remove_all(dir);
  outcome.detail = detail.str();
  return outcome;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"worked-example values", example_values},
      {"oracle equivalence", oracle_equivalence},
      {"theorem suite", theorem_suite},
      {"lower-tolerance consistency", consistency},
      {"counterexamples", counterexamples},
      {"CLI round trip", cli_round_trip},
  };
  bool all = true;
  int number = 1;
  for (const auto& [title, body] : criteria) {
    const Outcome outcome = guarded(body);
    report(number++, title, outcome);
    all = all && outcome.pass;
  }
  return all ? 0 : 1;
}
