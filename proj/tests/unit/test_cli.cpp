#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "fhmdp/fhmdp.hpp"
#include "support.hpp"

using namespace fhmdp;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"fhmdp"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : storage) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("fhmdp-cli-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("solve drilling, table format") {
  const auto r = run({"solve", "--model", "drilling", "--horizon", "10", "--format", "table"});
  CHECK(r.status == 0);
  CHECK(r.err.empty());
  CHECK(r.out == emit_report(solve_backward_induction(drilling_model(), Horizon{10}), ReportFormat::table));
  CHECK(has(r.out, "89233.3"));
}

TEST_CASE("solve defaults to ten epochs") {
  const auto r = run({"solve", "--model", "drilling", "--format", "json"});
  CHECK(parse_json_report(r.out).values.epochs() == 10);
}

TEST_CASE("solve with zero horizon prints terminal zeros only") {
  const auto r = run({"solve", "--model", "drilling", "--horizon", "0", "--format", "csv"});
  CHECK(r.status == 0);
  std::string want = "epoch,state,value,decision\n";
  for (int i = 1; i <= 10; ++i) want += "0," + std::to_string(i) + ",0,\n";
  CHECK(r.out == want);
}

TEST_CASE("solve toy3 as json equals the enumeration oracle") {
  const auto r = run({"solve", "--model", "toy3", "--horizon", "3", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto solved = parse_json_report(r.out);
  const auto enumerated = enumerate_optimal(toy3_model(), Horizon{3});
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(std::abs(solved.values.at(0, StateId{i}) - enumerated.values.at(0, StateId{i})) <= 1e-9);
  }
}

TEST_CASE("solve with terminal values from a file") {
  TempDir dir;
  const auto path = dir.write("terminal.json", "[1, 2, 3]");
  const auto r = run({"solve", "--model", "toy3", "--horizon", "0", "--terminal", path, "--format", "csv"});
  CHECK(r.status == 0);
  CHECK(has(r.out, "0,3,3,"));

  const auto bad = dir.write("bad.json", "[1, 2]");
  CHECK(run({"solve", "--model", "toy3", "--terminal", bad}).status == 2);
}

TEST_CASE("check against bundled fixtures") {
  const auto r = run({"check", "--model", "drilling", "--expected", "drilling"});
  CHECK(r.status == 0);
  CHECK(has(r.out, "ok"));

  const auto file = run({"check", "--model", test::data_path("drilling.json").string(), "--expected",
                         test::data_path("drilling_expected.json").string()});
  CHECK(file.status == 0);
}

TEST_CASE("check reports a flipped decision by epoch and state") {
  TempDir dir;
  auto expected = drilling_expected();
  expected.decisions.at(4, StateId{2}) = ActionId{2};
  const auto path = dir.write("flipped.json", save_expected_results(expected));
  const auto r = run({"check", "--model", "drilling", "--expected", path});
  CHECK(r.status == 1);
  CHECK(has(r.out, "d_3(4)"));
  CHECK(has(r.out, "expected 3, got 2"));
  CHECK(has(r.err, "1 mismatching cell"));
}

TEST_CASE("check fails on a value off by ten tolerances") {
  TempDir dir;
  auto expected = drilling_expected();
  expected.value_tolerance_rel = 0.0;
  expected.values.at(6, StateId{8}) += 10 * expected.value_tolerance_abs;
  const auto path = dir.write("shifted.json", save_expected_results(expected));
  const auto r = run({"check", "--model", "drilling", "--expected", path});
  CHECK(r.status == 1);
  CHECK(has(r.out, "v_9(6)"));
}

TEST_CASE("simulate is deterministic per seed") {
  const auto a = run({"simulate", "--model", "drilling", "--episodes", "2000", "--seed", "5", "--start", "1",
                      "--format", "csv"});
  const auto b = run({"simulate", "--model", "drilling", "--episodes", "2000", "--seed", "5", "--start", "1",
                      "--format", "csv"});
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(has(a.out, "start_state,episodes,mean,standard_error,seed"));
  const auto c = run({"simulate", "--model", "drilling", "--episodes", "2000", "--seed", "6", "--start", "1",
                      "--format", "csv"});
  CHECK(a.out != c.out);

  const auto all = run({"simulate", "--model", "drilling", "--episodes", "100"});
  CHECK(all.status == 0);
  CHECK(has(all.out, "std_error"));
}

TEST_CASE("simulate with a supplied policy file") {
  TempDir dir;
  // Always take the absorbing decision in state 10: value is 10 * 244.43.
  auto policy = Policy::constant(10, 10, ActionId{4});
  const auto path = dir.write("policy.json", save_policy(policy));
  const auto r = run({"simulate", "--model", "drilling", "--policy", path, "--start", "10", "--episodes", "50",
                      "--format", "json"});
  CHECK(r.status == 0);
  CHECK(has(r.out, "\"standard_error\": 0"));
  CHECK(has(r.out, "\"mean\": 2444.3"));

  CHECK(run({"simulate", "--model", "drilling", "--start", "11", "--episodes", "5"}).status == 2);
  CHECK(run({"simulate", "--model", "drilling", "--episodes", "0"}).status == 2);
}

TEST_CASE("verify random toy instances") {
  const auto r = run({"verify", "--random", "25", "--seed", "3"});
  CHECK(r.status == 0);
  CHECK(has(r.out, "0 disagreements"));
}

TEST_CASE("verify refuses the drilling model") {
  const auto r = run({"verify", "--model", "drilling"});
  CHECK(r.status == 2);
  CHECK(has(r.err, "too large"));
}

TEST_CASE("verify a forced single-action model") {
  TempDir dir;
  const auto path = dir.write("one.json", R"({"format_version": "1", "states": [
    {"label": "s", "actions": [{"reward": 3.25, "transitions": [{"to_state": 1, "probability": 1}]}]}]})");
  const auto r = run({"verify", "--model", path, "--horizon", "2"});
  CHECK(r.status == 0);
  CHECK(has(r.out, "v_1(0) = 6.5"));
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).status == 2);
  CHECK(run({"bogus"}).status == 2);
  CHECK(run({"solve"}).status == 2);
  CHECK(run({"solve", "--model", "nope"}).status == 2);
  CHECK(run({"solve", "--model", "drilling", "--format", "xml"}).status == 2);
  CHECK(run({"solve", "--model", "drilling", "--horizon", "-1"}).status == 2);
  CHECK(run({"check", "--model", "drilling"}).status == 2);
  CHECK(run({"verify"}).status == 2);

  TempDir dir;
  const auto broken = dir.write("broken.json", "{\"format_version\": \"1\", \"states\": [");
  const auto r = run({"solve", "--model", broken});
  CHECK(r.status == 2);
  CHECK(r.out.empty());
  CHECK(has(r.err, "malformed input"));

  const auto invalid = dir.write("invalid.json", R"({"format_version": "1", "states": [
    {"label": "s", "actions": [{"reward": 1, "transitions": [{"to_state": 1, "probability": 0.9}]}]}]})");
  const auto v = run({"solve", "--model", invalid});
  CHECK(v.status == 2);
  CHECK(has(v.err, "state 1 action 1"));
}

TEST_CASE("help exits cleanly") { CHECK(run({"--help"}).status == 0); }
