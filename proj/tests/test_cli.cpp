#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rubber/cache.hpp"
#include "rubber/chambers.hpp"
#include "rubber/cli.hpp"
#include "rubber/strata.hpp"

using nlohmann::json;
using namespace rubber;

namespace {

struct RunResult {
  int code;
  json out;
  std::string raw;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  RunResult r{code, json(), out.str()};
  if (!r.raw.empty() && (r.raw[0] == '{' || r.raw[0] == '[')) r.out = json::parse(r.raw);
  return r;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("rubbermap_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("table command") {
  RunResult r = run_cli({"table", "--max-n", "10"});
  REQUIRE(r.code == 0);
  auto rows = r.out["result"]["rows"];
  REQUIRE(rows.size() == 9);
  CHECK(rows.back()["n"] == 10);
  CHECK(rows.back()["chi_mbar_n"] == "734772384");
  CHECK(rows.back()["chi_m0_next"] == "1821473");
  CHECK(rows.front()["chi_mbar_n"] == "1");
}

TEST_CASE("euler command") {
  RunResult r = run_cli({"euler", "--x", "2,-1,-1"});
  REQUIRE(r.code == 0);
  CHECK(r.out["result"]["euler_characteristic"] == "1");
}

TEST_CASE("class command") {
  RunResult r = run_cli({"class", "--x", "3,-1,-1,-1"});
  REQUIRE(r.code == 0);
  CHECK(r.out["result"]["coefficients"] == json::array({"1", "1"}));
  CHECK(r.out["result"]["euler_characteristic"] == "2");
}

TEST_CASE("class command per-tree breakdown") {
  RunResult r = run_cli({"class", "--x", "3,-1,-1,-1", "--per-tree"});
  REQUIRE(r.code == 0);
  auto strata_rows = r.out["result"]["strata"];
  REQUIRE(strata_rows.size() == 4);
  // the star tree contributes L - 2, each split tree contributes 1
  bool saw_star = false;
  for (const auto& row : strata_rows) {
    if (row["tree"] == "") {
      saw_star = true;
      CHECK(row["coefficients"] == json::array({"-2", "1"}));
    } else {
      CHECK(row["coefficients"] == json::array({"1"}));
    }
  }
  CHECK(saw_star);
}

TEST_CASE("output is deterministic and thread-count independent") {
  RunResult serial = run_cli({"class", "--x", "5,-1,-1,-1,-1,-1", "--jobs", "1"});
  RunResult parallel = run_cli({"class", "--x", "5,-1,-1,-1,-1,-1", "--jobs", "4"});
  REQUIRE(serial.code == 0);
  REQUIRE(parallel.code == 0);
  CHECK(serial.out["result"]["coefficients"] == parallel.out["result"]["coefficients"]);
}

TEST_CASE("cache directory from the environment") {
  TempDir dir;
  ::setenv("RUBBERMAP_CACHE_DIR", dir.path.c_str(), 1);
  RunResult first = run_cli({"table", "--max-n", "5"});
  RunResult second = run_cli({"table", "--max-n", "5"});
  ::unsetenv("RUBBERMAP_CACHE_DIR");
  REQUIRE(first.code == 0);
  REQUIRE(second.code == 0);
  CHECK(first.out["result"]["from_cache"] == false);
  CHECK(second.out["result"]["from_cache"] == true);
}

TEST_CASE("chamber command reports the signature") {
  RunResult r = run_cli({"chamber", "--x", "2,-1,-1"});
  REQUIRE(r.code == 0);
  CHECK(r.out["result"]["valid"] == true);
  auto sig = r.out["result"]["signature"];
  REQUIRE(sig.size() == 3);
  CHECK(sig[0]["subset"] == json::array({1}));
  CHECK(sig[0]["sign"] == "+");
}

TEST_CASE("wallcross command") {
  RunResult r = run_cli({"wallcross", "--x", "4,-1,-1,-1,-1", "--y", "8,-2,-2,-3,-1"});
  REQUIRE(r.code == 0);
  CHECK(r.out["result"]["coefficients"] == json::array({"0"}));
  CHECK(r.out["result"]["same_chamber"] == true);
}

TEST_CASE("invalid datum yields machine-readable error and exit 1") {
  RunResult r = run_cli({"euler", "--x", "1,1,-1,-1"});
  CHECK(r.code == 1);
  CHECK(r.out["error"]["code"] == "vanishing_subset_sum");
  CHECK(r.out["error"]["witness"] == json::array({1, 3}));

  RunResult r2 = run_cli({"euler", "--x", "not-a-vector"});
  CHECK(r2.code == 1);
  CHECK(r2.out["error"]["code"] == "bad_arguments");
}

TEST_CASE("bound exceeded yields exit 1") {
  RunResult r = run_cli({"euler", "--x", "9,-1,-1,-1,-1,-1,-1,-1,-1,-1"});
  CHECK(r.code == 1);
  CHECK(r.out["error"]["code"] == "bound_exceeded");
}

TEST_CASE("csv output") {
  RunResult r = run_cli({"table", "--max-n", "4", "--format", "csv"});
  REQUIRE(r.code == 0);
  CHECK(r.raw == "n,chi_mbar_n,chi_m0_next\n2,1,1\n3,2,2\n4,10,7\n");
}

TEST_CASE("ratio command") {
  RunResult r = run_cli({"ratio", "--max-n", "4"});
  REQUIRE(r.code == 0);
  auto rows = r.out["result"]["ratios"];
  REQUIRE(rows.size() == 3);
  CHECK(rows[2]["ratio"]["numerator"] == "7");
  CHECK(rows[2]["ratio"]["denominator"] == "10");
}

TEST_CASE("table cache round trip") {
  TempDir dir;
  RunResult first = run_cli({"table", "--max-n", "19", "--cache-dir", dir.path.string()});
  REQUIRE(first.code == 0);
  CHECK(first.out["result"]["from_cache"] == false);
  RunResult second = run_cli({"table", "--max-n", "19", "--cache-dir", dir.path.string()});
  REQUIRE(second.code == 0);
  CHECK(second.out["result"]["from_cache"] == true);
  CHECK(second.out["result"]["rows"] == first.out["result"]["rows"]);
  CHECK(second.out["result"]["rows"].back()["chi_mbar_n"] == "544879611875655894561850368");
}

TEST_CASE("corrupt cache file recomputes with a warning") {
  TempDir dir;
  run_cli({"table", "--max-n", "6", "--cache-dir", dir.path.string()});
  for (const auto& entry : std::filesystem::directory_iterator(dir.path)) {
    if (entry.path().extension() == ".json") {
      std::ofstream(entry.path()) << "{ not json";
    }
  }
  RunResult r = run_cli({"table", "--max-n", "6", "--cache-dir", dir.path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out["result"]["from_cache"] == false);
  CHECK(r.out["result"]["rows"][4]["chi_mbar_n"] == "1108");
}

TEST_CASE("cache version mismatch recomputes") {
  TempDir dir;
  cache::ResultCache store(dir.path);
  recursion::EulerTable table = recursion::chi_table(5, 20);
  store.store_table(table, 20);
  for (const auto& entry : std::filesystem::directory_iterator(dir.path)) {
    if (entry.path().extension() != ".json") continue;
    std::ifstream in(entry.path());
    json j = json::parse(in);
    in.close();
    j["format_version"] = cache::kFormatVersion + 1;
    std::ofstream(entry.path()) << j.dump();
  }
  CHECK_FALSE(store.load_table(5, 20).has_value());
}

TEST_CASE("class cache is keyed by chamber and re-verified") {
  TempDir dir;
  cache::ResultCache store(dir.path);
  RamificationDatum x = chambers::validate({4, -1, -1, -1, -1});
  RamificationDatum y = chambers::validate({8, -2, -2, -3, -1});  // same chamber
  GClass g = strata::total_class(x);
  store.store_class(x, g);
  auto hit = store.load_class(y);
  REQUIRE(hit.has_value());
  CHECK(*hit == g);
  // a different chamber misses
  RamificationDatum z = chambers::validate({-4, 1, 1, 1, 1});
  CHECK_FALSE(store.load_class(z).has_value());
}

TEST_CASE("verify command on the small suites") {
  RunResult r = run_cli({"verify", "--suite", "oracle", "--max-n", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out["result"]["all_passed"] == true);
  for (const auto& row : r.out["result"]["checks"]) CHECK(row["pass"] == true);
}

TEST_CASE("help exits cleanly") {
  RunResult r = run_cli({"--help"});
  CHECK(r.code == 0);
}

TEST_CASE("missing subcommand is a usage error") {
  RunResult r = run_cli({});
  CHECK(r.code == 1);
  CHECK(r.out["error"]["code"] == "bad_arguments");
}
