#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = coarse_menger::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "coarse_menger_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("run-duality reports packing and cover sizes on a grid") {
  auto r = call({"run-duality", "--grid", "3x9", "--r", "1,3", "--beta", "0,1"});
  REQUIRE(r.code == coarse_menger::cli::kOk);
  auto doc = json::parse(r.out);
  CHECK(doc["command"] == "run-duality");
  CHECK(doc["weak_duality_violations"] == 0);
  CHECK(doc["capacity_hit"] == false);
  REQUIRE(doc["instances"].size() == 1);
  const auto& inst = doc["instances"][0];
  CHECK(inst["packing"][0]["value"] == 3);
  CHECK(inst["packing"][1]["value"] == 1);
  CHECK(inst["cover"][0]["value"] == 3);
  CHECK(inst["cover"][1]["value"] == 1);
  CHECK(doc["config"].contains("caps"));
}

TEST_CASE("run-duality writes byte-identical reports and CSV") {
  auto a = scratch("a.json"), b = scratch("b.json"), csv = scratch("a.csv");
  std::vector<std::string> args{"run-duality", "--random", "6", "--seed", "4", "--r", "1,2", "--beta", "0",
                                "--jobs", "2", "--csv", csv.string()};
  auto first = args, second = args;
  first.insert(first.end(), {"--out", a.string()});
  second.insert(second.end(), {"--out", b.string()});
  REQUIRE(call(first).code == 0);
  REQUIRE(call(second).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(json::parse(slurp(a))["instances"].size() == 6);
  auto table = slurp(csv);
  CHECK(table.rfind("fingerprint,kind,threshold,value,exact,flag\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 1 + 6 * 3);
}

TEST_CASE("run-duality on an empty instance list succeeds") {
  auto r = call({"run-duality", "--r", "1", "--beta", "0"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["instances"].empty());
}

TEST_CASE("run-duality maps errors to exit codes") {
  CHECK(call({"run-duality", "--grid", "3xq"}).code == coarse_menger::cli::kMalformed);
  CHECK(call({"run-duality", "--grid", "3x3", "--r", "0"}).code == coarse_menger::cli::kMalformed);
  CHECK(call({"run-duality", "--no-such-flag"}).code == coarse_menger::cli::kMalformed);
  CHECK(call({}).code == coarse_menger::cli::kMalformed);
  auto file = scratch("bad.txt");
  std::ofstream(file) << "0 1\n1 zz\n";
  auto bad = call({"run-duality", "--file", file.string(), "--x", "0", "--y", "1"});
  CHECK(bad.code == coarse_menger::cli::kMalformed);
  CHECK(bad.err.find("line 2") != std::string::npos);

  std::vector<std::string> capped{"--caps", "nodes=5", "run-duality", "--grid", "4x6", "--r", "2,3", "--beta", "0,1"};
  auto loose = capped, strict = capped;
  strict.push_back("--strict");
  auto soft = call(loose);
  CHECK(soft.code == 0);
  CHECK(json::parse(soft.out)["capacity_hit"] == true);
  CHECK(call(strict).code == coarse_menger::cli::kCapacity);
}

TEST_CASE("run-acceptance runs selected criteria and flags injected faults") {
  auto ok = call({"run-acceptance", "--only", "menger,constants"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS  1 menger") != std::string::npos);
  CHECK(ok.out.find("PASS  8 constants") != std::string::npos);
  CHECK(ok.out.find("gallai") == std::string::npos);

  auto faulty = call({"run-acceptance", "--only", "constants", "--inject-fault", "constants"});
  CHECK(faulty.code == coarse_menger::cli::kViolation);
  CHECK(faulty.out.find("FAIL  8 constants") != std::string::npos);

  CHECK(call({"run-acceptance", "--only", "nonsense"}).code == coarse_menger::cli::kMalformed);
}

TEST_CASE("gen emits instances and re-checks claims") {
  auto g = call({"gen", "--family", "grid", "--grid", "3x4"});
  REQUIRE(g.code == 0);
  auto doc = json::parse(g.out);
  CHECK(doc["instances"][0]["graph"]["edges"].size() == 17);

  auto lower = call({"gen", "--family", "menger-lower-bound", "--r", "3", "--n", "9", "--verify"});
  REQUIRE(lower.code == 0);
  for (const auto& note : json::parse(lower.out)["instances"][0]["annotations"]) CHECK(note["verified"] == true);

  auto a = call({"gen", "--family", "partial-k-tree", "--count", "3", "--seed", "12"});
  auto b = call({"gen", "--family", "partial-k-tree", "--count", "3", "--seed", "12"});
  CHECK(a.out == b.out);
  CHECK(json::parse(a.out)["instances"].size() == 3);
  CHECK(call({"gen", "--family", "nope"}).code == coarse_menger::cli::kMalformed);
}

TEST_CASE("run-tangle-lab runs the trichotomy and the decomposition") {
  auto cut = call({"run-tangle-lab", "--grid", "1x5", "--members", "0;4", "--k", "3", "--theta", "1", "--r", "1",
                   "--xi", "0"});
  REQUIRE(cut.code == 0);
  auto doc = json::parse(cut.out);
  CHECK(doc["result"]["outcome"].get<int>() >= 1);

  auto split = call({"run-tangle-lab", "--grid", "1x6", "--members", "5", "--k", "2", "--thetas", "1,1", "--r", "2"});
  REQUIRE(split.code == 0);
  CHECK(json::parse(split.out).contains("budget"));
}

TEST_CASE("run-transfer prints constants and pulls hitting sets back") {
  auto t = call({"run-transfer", "--m", "2", "--a", "1", "--k", "2", "--r", "3", "--ell", "1", "--f", "5", "--g", "7"});
  REQUIRE(t.code == 0);
  auto doc = json::parse(t.out);
  CHECK(doc["result"]["constants"]["c1"] == 39);
  CHECK(doc["result"]["constants"]["c2"] == 24);
  CHECK(doc["result"]["remote_chain"]["g"] == 44);

  auto ledger = call({"run-transfer", "--minor", "apex"});
  REQUIRE(ledger.code == 0);
  CHECK(json::parse(ledger.out)["result"]["radius_coefficient"]["c_h"] == 14);
  CHECK(call({"run-transfer", "--minor", "general"}).code == coarse_menger::cli::kMalformed);

  auto pulled = call({"run-transfer", "--grid", "3x4", "--r", "2"});
  CHECK(pulled.code == 0);
}
