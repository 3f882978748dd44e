#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "macring/cli.hpp"

using namespace mac;
using nlohmann::json;

namespace {

const char* square = "m=4; facets={1,2},{2,3},{3,4},{1,4}";
const char* pentagon = "m=5; facets={1,2},{2,3},{3,4},{4,5},{1,5}";

JobSpec job(const std::string& complex, Command command, const std::string& pairs = "disk-sphere:2") {
  JobSpec s;
  s.complex = complex;
  s.command = command;
  s.pairs = pairs;
  return s;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("betti of S^3 x S^3", "[cli]") {
  JobResult r = run(job(square, Command::Betti));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.report, "pairs: disk-sphere:[2,2,2,2]"));
  JobSpec s = job(square, Command::Betti);
  s.format = OutputFormat::Structured;
  json doc = json::parse(run(s).report);
  CHECK(doc["command"] == "betti");
  std::map<int, int> totals;
  for (const auto& row : doc["totals"]) totals[row["degree"].get<int>()] = row["rank"].get<int>();
  CHECK(totals == std::map<int, int>{{0, 1}, {3, 2}, {6, 1}});
}

TEST_CASE("ring of the pentagon", "[cli]") {
  JobSpec s = job(pentagon, Command::Ring);
  s.format = OutputFormat::Structured;
  JobResult r = run(s);
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.report);
  CHECK(doc["generators"].size() == 12);
  std::size_t non_unit = 0;
  for (const auto& p : doc["products"])
    if (p[0].get<int>() > 0 && p[1].get<int>() > 0) ++non_unit;
  CHECK(non_unit == 10);
  CHECK(doc["generators"][1].contains("representative"));
}

TEST_CASE("reports are deterministic", "[cli]") {
  for (Command c : {Command::Betti, Command::Ring, Command::Table, Command::Verify})
    for (OutputFormat f : {OutputFormat::Text, OutputFormat::Structured}) {
      JobSpec s = job(square, c);
      s.format = f;
      JobResult a = run(s), b = run(s);
      CHECK(a.exit_code == 0);
      CHECK(a.report == b.report);
    }
}

TEST_CASE("verify passes on the square", "[cli]") {
  JobResult r = run(job(square, Command::Verify));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.report, "PASS additive splitting"));
  CHECK(contains(r.report, "PASS product formula (10 generator pairs)"));
}

TEST_CASE("exit codes", "[cli]") {
  SECTION("bad vertex") { CHECK(run(job("m=2; facets={1,3}", Command::Betti)).exit_code == 2); }
  SECTION("bad pairs") { CHECK(run(job(square, Command::Betti, "disk-sphere:[1,2]")).exit_code == 2); }
  SECTION("bad coefficients") {
    JobSpec s = job(square, Command::Betti);
    s.coefficients = "Zp:4";
    CHECK(run(s).exit_code == 2);
  }
  SECTION("missing file") { CHECK(run(job("/nonexistent/complex.txt", Command::Betti)).exit_code == 2); }
  SECTION("size policy") { CHECK(run(job(pentagon, Command::Verify)).exit_code == 3); }
  SECTION("explicit budget") {
    JobSpec s = job(square, Command::Verify);
    s.budget = 500;
    CHECK(run(s).exit_code == 3);
  }
  SECTION("failed comparison") {
    JobSpec s = job(pentagon, Command::RegradeCheck, "disk-sphere:1");
    JobResult r = run(s);
    CHECK(r.exit_code == 1);
    CHECK(contains(r.report, "FAIL ungraded isomorphism"));
  }
}

TEST_CASE("regrade check between suspensions", "[cli]") {
  JobSpec s = job(square, Command::RegradeCheck, "disk-sphere:1 suspend:[1,1,1,1]");
  JobResult r = run(s);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.report, "suspend:[1,1,1,1] vs suspend:[3,3,3,3]"));
  s.compare_suspend = std::vector<int>{1, 3, 1, 3};
  CHECK(run(s).exit_code == 0);
  s.compare_suspend = std::vector<int>{2, 2, 2, 2};
  CHECK(run(s).exit_code == 2);
}

TEST_CASE("complex, pair and ring files", "[cli]") {
  auto complex = write_temp("macring_test_complex.json", R"({"m": 2, "facets": [[1, 2]]})");
  auto pairs = write_temp("macring_test_pairs.json",
                          R"({"X": "m=3; facets={1,2},{2,3},{1,3}", "A": "m=3; facets={1}"})");
  auto ring = write_temp("macring_test_ring.txt", "gen s 1\n");

  JobSpec s = job(complex.string(), Command::Ring, "pair-file:" + pairs.string());
  s.format = OutputFormat::Structured;
  JobResult r = run(s);
  REQUIRE(r.exit_code == 0);
  json doc = json::parse(r.report);
  CHECK(doc["generators"].size() == 4);
  CHECK_FALSE(doc.contains("basepoint_added"));

  s.pairs = "cone:" + ring.string();
  s.complex = "m=2; facets={1},{2}";
  r = run(s);
  REQUIRE(r.exit_code == 0);
  doc = json::parse(r.report);
  CHECK(doc["generators"].size() == 2);
  CHECK(doc["generators"][1]["degree"] == 3);

  auto empty = write_temp("macring_test_empty.json", R"({"X": "m=1; facets={1}", "A": "m=1; facets="})");
  s.pairs = "pair-file:" + empty.string();
  r = run(s);
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.report)["basepoint_added"] == true);

  for (const auto& p : {complex, pairs, ring, empty}) std::filesystem::remove(p);
}

TEST_CASE("hochster table layout", "[cli]") {
  JobResult r = run(job("m=2; facets={1},{2}", Command::Table));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.report, "    2          .          1"));
}
