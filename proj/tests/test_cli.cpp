#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "tlfe/cli.hpp"

using namespace tlfe;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "tlfe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "tlfe_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("compile writes automaton json") {
  auto path = scratch("fa.json");
  auto r = call({"compile", "--formula", "F a", "--alphabet", "a", "--out", path.string()});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["alphabet"] == nlohmann::json({"a"}));
  CHECK(j["accepting"].size() == 1);

  auto stdout_run = call({"compile", "--formula", "F a", "--alphabet", "a"});
  CHECK(stdout_run.code == 0);
  CHECK(nlohmann::json::parse(stdout_run.out) == j);
}

TEST_CASE("commit states of the example formula") {
  auto r = call({"commits", "--formula", tlfe::testing::kPhi0, "--alphabet", "a,b,c"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["commit_states"].size() == 1);
  const std::string id = std::to_string(j["commit_states"][0].get<int>());
  CHECK(j["witnesses"][id] == nlohmann::json::parse(R"([["a"]])"));
}

TEST_CASE("compile then commits round trip") {
  const char* formula = "(!l U (l U (p U ((l|p) U s)))) & F s & (!s U p)";
  auto path = scratch("rescue.json");
  REQUIRE(call({"compile", "--formula", formula, "--alphabet", "l,p,s", "--out", path.string()}).code == 0);
  auto via_file = call({"commits", "--dfa", path.string()});
  auto direct = call({"commits", "--formula", formula, "--alphabet", "l,p,s"});
  CHECK(via_file.code == 0);
  CHECK(via_file.out == direct.out);
}

TEST_CASE("runs on the scenario map") {
  const std::string map = tlfe::testing::fixture("descent.map");
  auto base = call({"run", "--map", map, "--method", "baseline"});
  CHECK(base.code == 1);
  auto jb = nlohmann::json::parse(base.out);
  CHECK(jb["verdict"] == "unsatisfiable");

  auto ours = call({"run", "--map", map});
  CHECK(ours.code == 0);
  auto jo = nlohmann::json::parse(ours.out);
  CHECK(jo["verdict"] == "satisfied");
  CHECK(jo["trajectory"].size() == jo["steps"].get<std::size_t>() + 1);

  auto trace = call({"run", "--map", map, "--trace", "-"});
  CHECK(trace.code == 0);
  std::istringstream lines(trace.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    CHECK(j["t"] == n);
    CHECK(j.contains("v_max"));
    ++n;
  }
  CHECK(n == jo["steps"].get<std::size_t>() + 1);
}

TEST_CASE("render and random maps") {
  auto r = call({"render", "--random", "20", "--blocks", "5", "--seed", "3", "--steps", "0,1"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("t=0\n", 0) == 0);
  CHECK(r.out.find("t=1\n") != std::string::npos);
  auto svg = call({"render", "--random", "20", "--format", "svg"});
  CHECK(svg.out.rfind("<svg", 0) == 0);
  CHECK(call({"render", "--random", "20", "--format", "gif"}).code == 2);
  CHECK(call({"render", "--random", "20", "--steps", "100000"}).code == 2);
}

TEST_CASE("bench output is reproducible") {
  auto a = scratch("bench_a.jsonl");
  auto b = scratch("bench_b.jsonl");
  auto ra = call({"bench", "--maps", "4", "--blocks", "0,5", "--out", a.string()});
  auto rb = call({"bench", "--maps", "4", "--blocks", "0,5", "--out", b.string(), "--jobs", "2"});
  CHECK(ra.code == 0);
  CHECK(rb.code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(ra.out == rb.out);
  CHECK(ra.out.find("baseline") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"compile", "--formula", "F a"}).code == 2);
  CHECK(call({"compile", "--formula", "X a", "--alphabet", "a"}).code == 2);
  CHECK(call({"compile", "--formula", "F a", "--alphabet", "a", "--max-states", "1"}).code == 2);
  CHECK(call({"commits", "--formula", "F a", "--dfa", "x.json", "--alphabet", "a"}).code == 2);
  CHECK(call({"commits", "--dfa", "/nonexistent.json"}).code == 2);
  CHECK(call({"run", "--map", "/nonexistent.map"}).code == 2);
  CHECK(call({"run", "--random", "20", "--alpha1", "0"}).code == 2);
  CHECK(call({"run", "--random", "20", "--method", "greedy"}).code == 2);
  CHECK(call({"bench", "--maps", "1", "--blocks", "x"}).code == 2);
  auto e = call({"compile", "--formula", "a U", "--alphabet", "a"});
  CHECK(e.err.find("end of input") != std::string::npos);
}

TEST_CASE("help") {
  auto r = call({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("compile") != std::string::npos);
}

}  // TEST_SUITE
