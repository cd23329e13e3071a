#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "cotol/generators.hpp"
#include "cotol/io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& arguments) {
  const std::string command = std::string(COTOL_CLI) + " " + arguments + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

nlohmann::json analyze_json(const std::string& arguments, const fs::path& out) {
  REQUIRE(run("analyze " + arguments + " --out " + out.string()) == 0);
  return nlohmann::json::parse(slurp(out));
}

struct TempDir {
  fs::path path = fs::temp_directory_path() / ("cotol_cli_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(path); }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("examples then analyze reproduces the worked values") {
  TempDir dir;
  REQUIRE(run("examples " + dir.path.string()) == 0);
  for (const cotol::Instance& fixture : cotol::worked_examples()) {
    CHECK(cotol::load_instance(dir.path / (fixture.name() + ".json")) == fixture);
  }
  const fs::path out = dir.path / "report.json";
  const std::string examp2 = (dir.path / "examp2.json").string();

  auto report = analyze_json(examp2 + " --set v,w --kind upper-regular", out);
  CHECK(report["records"][0]["value"] == "2");

  report = analyze_json((dir.path / "examp3.json").string() + " --set v,w --kind upper-regular", out);
  CHECK(report["records"][0]["value"] == "5");
  CHECK(report["records"][0]["precision"] == "±1e-6");

  report = analyze_json(examp2 + " --kind upper", out);
  REQUIRE(report["records"].size() == 5);
  for (int i = 0; i < 4; ++i) CHECK(report["records"][i]["value"] == "0");
  CHECK(report["records"][4]["target"] == "z");
  CHECK(report["records"][4]["value"] == "inf");

  report = analyze_json(examp2 + " --element z --kind lower", out);
  CHECK(report["records"][0]["value"] == "1");

  report = analyze_json((dir.path / "examp4.json").string() + " --element y --kind lower", out);
  CHECK(report["records"][0]["value"] == "0");

  report = analyze_json(examp2 + " --element v --oracle", out);
  CHECK(report["records"].size() == 6);
  CHECK(report["records"][0]["method"] == "oracle");
}

TEST_CASE("verify exit statuses") {
  TempDir dir;
  CHECK(run("verify --examples") == 0);

  const fs::path a = dir.path / "a.json";
  const fs::path b = dir.path / "b.json";
  REQUIRE(run("verify --random 4 --seed 1 --subsets 2 --out " + a.string()) == 0);
  REQUIRE(run("verify --random 4 --seed 1 --subsets 2 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));

  const fs::path duplicate = dir.path / "duplicate.json";
  std::ofstream(duplicate) << R"({"objective": "sum", "elements": [{"id": "a", "cost": 1}],
                                  "solutions": [["a"], ["a"]]})";
  CHECK(run("verify " + duplicate.string()) == 2);

  const fs::path huge = dir.path / "huge.json";
  std::ofstream(huge) << R"({"objective": "sum", "generator": {"family": "random-explicit",
      "seed": 1, "element_count": 10, "solution_count": 30, "max_solutions": 5}})";
  CHECK(run("verify " + huge.string()) == 3);

  CHECK(run("verify") == 2);
  CHECK(run("analyze examp2 --set v,w --kind upper") == 2);
  CHECK(run("analyze examp2 --kind sideways") == 2);
  CHECK(run("analyze no-such-file.json") == 2);
  CHECK(run("") == 2);
}
