#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "../tools/cli.hpp"
#include "helpers.hpp"
#include "hsdp/io.hpp"

namespace fs = std::filesystem;
using hsdp::cli::run;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("hsdp_cli_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& name = "") const {
    return (name.empty() ? path : path / name).string();
  }
};

std::string fixture(const std::string& name) {
  return hsdp::test::fixture(name).string();
}

nlohmann::json load_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("construct writes files matching the shipped goldens") {
  TempDir dir;
  int code = run({"construct", "--L", "4", "--r", "2", "--m", "2,2", "--v", "115",
                  "--outdir", dir.str()});
  CHECK(code == 0);
  CHECK(load_json(dir.path / "hsdp.json") ==
        load_json(hsdp::test::fixture("example4_hsdp.json")));
  CHECK(load_json(dir.path / "mapda.json") ==
        load_json(hsdp::test::fixture("example4_mapda.json")));
}

TEST_CASE("construct can drop the virtual user for an even user count") {
  TempDir dir;
  CHECK(run({"construct", "--L", "4", "--r", "2", "--m", "2,2", "--v", "115",
             "--drop-virtual-user", "--outdir", dir.str()}) == 0);
  hsdp::Mapda array = hsdp::load_mapda(dir.path / "mapda.json");
  CHECK(array.cols() == 114);
  CHECK(array.rows() == 115);
  CHECK(hsdp::verify_mapda(array).pass());

  CHECK(run({"construct", "--L", "4", "--r", "2", "--m", "2,2", "--v", "115",
             "--drop-virtual-user", "--virtual-column", "0", "--outdir",
             dir.str()}) == 0);
  hsdp::Mapda chosen = hsdp::load_mapda(dir.path / "mapda.json");
  CHECK(chosen.cols() == 114);
  CHECK(hsdp::verify_mapda(chosen).pass());
}

TEST_CASE("construct exit codes distinguish parameter problems") {
  TempDir dir;
  // modulus too small
  CHECK(run({"construct", "--L", "4", "--m", "2,2", "--v", "113",
             "--outdir", dir.str()}) == hsdp::cli::kExitBadParams);
  // a single antenna is degenerate outright; the bumped tail makes the
  // recursion evaluable but the result cannot pass verification
  CHECK(run({"construct", "--L", "1", "--m", "1", "--v", "27",
             "--outdir", dir.str()}) == hsdp::cli::kExitBadParams);
  CHECK(run({"construct", "--L", "1", "--m", "1", "--v", "27", "--bump-tail",
             "--outdir", dir.str()}) == hsdp::cli::kExitVerifyFailed);
  // missing required flag
  CHECK(run({"construct", "--L", "4", "--v", "115"}) == hsdp::cli::kExitBadParams);
}

TEST_CASE("verify reports pass and fail through exit codes") {
  CHECK(run({"verify", "--mapda", fixture("example1_mapda.json")}) == 0);
  CHECK(run({"verify", "--mapda", fixture("example1_mapda.json"), "--L", "3"}) == 0);
  CHECK(run({"verify", "--mapda", fixture("example3_Q.json")}) ==
        hsdp::cli::kExitVerifyFailed);
  CHECK(run({"verify", "--mapda", fixture("example1_mapda.json"), "--L", "2"}) ==
        hsdp::cli::kExitVerifyFailed);
  CHECK(run({"verify", "--hsdp", fixture("example2_hsdp.json")}) == 0);
  CHECK(run({"verify", "--hsdp", fixture("example2_hsdp.json"), "--L", "1"}) ==
        hsdp::cli::kExitVerifyFailed);
  CHECK(run({"verify", "--mapda", "missing.json"}) == hsdp::cli::kExitIo);
  CHECK(run({"verify"}) == hsdp::cli::kExitBadParams);
  CHECK(run({"verify", "--hsdp", "a", "--mapda", "b"}) == hsdp::cli::kExitBadParams);
}

TEST_CASE("optimize emits design points for both modes") {
  TempDir dir;
  CHECK(run({"optimize", "--L", "4", "--q", "4", "--n", "2", "--outdir",
             dir.str()}) == 0);
  nlohmann::json point = load_json(dir.path / "design_point.json");
  CHECK(point["v"] == 567);
  CHECK(point["g"] == 16);
  CHECK(point["m"] == nlohmann::json({4, 7}));
  CHECK(point["memory_ratio"] == "17/81");

  CHECK(run({"optimize", "--L", "4", "--search-v", "115", "--n", "2", "--out",
             "searched.json", "--outdir", dir.str()}) == 0);
  nlohmann::json searched = load_json(dir.path / "searched.json");
  CHECK(searched["b"] == 4);

  CHECK(run({"optimize", "--L", "4", "--q", "1", "--n", "2", "--outdir",
             dir.str()}) == hsdp::cli::kExitBadParams);
  CHECK(run({"optimize", "--L", "2", "--search-v", "3", "--n", "2", "--outdir",
             dir.str()}) == hsdp::cli::kExitBadParams);
  CHECK(run({"optimize", "--L", "4", "--n", "2"}) == hsdp::cli::kExitBadParams);
  CHECK(run({"optimize", "--L", "4", "--q", "4", "--search-v", "115", "--n",
             "2"}) == hsdp::cli::kExitBadParams);
}

TEST_CASE("simulate runs the worked example end to end") {
  TempDir dir;
  CHECK(run({"simulate", "--mapda", fixture("example1_mapda.json"),
             "--channel-file", fixture("example1_channel.csv"), "--demands",
             "1,2,3,4", "--outdir", dir.str()}) == 0);
  nlohmann::json report = load_json(dir.path / "sim_report.json");
  CHECK(report["all_decoded"] == true);
  CHECK(report["measured_sum_dof"] == "4");

  CHECK(run({"simulate", "--mapda", fixture("example3_mapda.json"), "--seed",
             "11", "--outdir", dir.str()}) == 0);
  // a failing array is a delivery failure, not a crash
  CHECK(run({"simulate", "--mapda", fixture("example3_Q.json"), "--outdir",
             dir.str()}) == hsdp::cli::kExitVerifyFailed);
  CHECK(run({"simulate", "--mapda", fixture("example1_mapda.json"), "--demands",
             "1,2", "--outdir", dir.str()}) == hsdp::cli::kExitBadParams);
}

TEST_CASE("compare writes the sweep CSV") {
  TempDir dir;
  CHECK(run({"optimize", "--L", "2", "--q", "2", "--n", "2", "--out",
             "p75.json", "--outdir", dir.str()}) == 0);
  CHECK(run({"compare", "--k", "75", "--l", "2", "--ours-from",
             dir.str("p75.json"), "--outdir", dir.str()}) == 0);
  std::ifstream in(dir.path / "compare.csv");
  REQUIRE(in.good());
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "scheme,K,L,t,M_over_N,F_exact,F_float,g,applicable,reason");
  CHECK(first.rfind("HSDP,75,2,27,9/25,75,75,8,yes,", 0) == 0);

  CHECK(run({"compare", "--k", "11", "--l", "2", "--t", "3", "--outdir",
             dir.str()}) == 0);
  CHECK(run({"compare", "--k", "11", "--l", "2"}) == hsdp::cli::kExitBadParams);
  CHECK(run({"compare", "--k", "76", "--l", "2", "--ours-from",
             dir.str("p75.json"), "--outdir", dir.str()}) ==
        hsdp::cli::kExitBadParams);
  CHECK(run({"compare", "--k", "75", "--l", "2", "--ours-from", "nope.json",
             "--outdir", dir.str()}) == hsdp::cli::kExitIo);
}

TEST_CASE("top-level usage errors") {
  CHECK(run({}) == hsdp::cli::kExitBadParams);
  CHECK(run({"frobnicate"}) == hsdp::cli::kExitBadParams);
}
