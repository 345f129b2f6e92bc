#include "taut/cli.hpp"
#include "taut/json_io.hpp"

#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace taut;

namespace {

struct Run {
  int code;
  std::string out;
  Json manifest;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  const std::string e = err.str();
  REQUIRE(std::count(e.begin(), e.end(), '\n') == 1);
  return {code, out.str(), Json::parse(e).at("manifest")};
}

std::filesystem::path fresh_cache(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("taut-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  ::setenv("TAUT_CACHE_DIR", dir.c_str(), 1);
  return dir;
}

}  // namespace

TEST_CASE("hurwitz command") {
  fresh_cache("hurwitz");
  auto both = run({"hurwitz", "--genus", "1", "--alpha", "2", "--method", "both"});
  CHECK(both.code == 0);
  CHECK(both.json()["h"] == "1/2");
  CHECK(both.json()["verdict"] == "equal");

  CHECK(run({"hurwitz", "--genus", "1", "--alpha", "1"}).json()["h"] == "0");
  const auto j = run({"hurwitz", "--genus", "0", "--alpha", "1,1,1"}).json();
  CHECK(j["h"] == "4");
  CHECK(j["h_labeled"] == "24");
  CHECK(j["tuple_count"] == "24");
  CHECK(j["r"] == 4);

  const auto csv = run({"hurwitz", "--genus", "0", "--alpha", "2,1", "--format", "csv"});
  CHECK(csv.out == "g,alpha,d,n,r,tuple_count,h,h_labeled,method\n0,\"2,1\",3,2,3,24,4,4,fast\n");
}

TEST_CASE("exit codes and error records") {
  fresh_cache("errors");
  const auto budget = run({"hurwitz", "--genus", "2", "--alpha", "5", "--method", "brute", "--budget", "1000"});
  CHECK(budget.code == 2);
  CHECK(budget.json()["error"]["kind"] == "budget_exceeded");
  CHECK(budget.manifest["exit_code"] == 2);

  CHECK(run({"elsv-verify", "--genus", "0", "--n", "1"}).code == 3);
  CHECK(run({"degenerate", "--genus", "0", "--alpha", "2"}).code == 3);
  CHECK(run({"graphs", "enumerate", "--genus", "0", "--n", "2"}).code == 3);
  CHECK(run({"hurwitz", "--genus", "1", "--alpha", "2,x"}).code == 3);
  CHECK(run({"hurwitz", "--genus", "-1", "--alpha", "2"}).code == 3);
  CHECK(run({"frobnicate"}).code == 3);

  const auto rank = run({"elsv-verify", "--genus", "1", "--n", "1", "--max-part", "1"});
  CHECK(rank.code == 4);
  CHECK(rank.json()["error"]["kind"] == "rank_deficient");
  CHECK(rank.json()["error"]["advice"].get<std::string>().find("--max-part") != std::string::npos);
}

TEST_CASE("elsv-verify command") {
  fresh_cache("elsv");
  const auto r = run({"elsv-verify", "--genus", "1", "--n", "1", "--max-part", "3"});
  CHECK(r.code == 0);
  const auto j = r.json();
  CHECK(j["all_equal"] == true);
  CHECK(j["table"].size() == 2);
  for (const auto& row : j["table"]) CHECK(row["value"] == "1/24");
  CHECK(j["points"].size() == 3);
  CHECK(j["held_out_points"] == 1);

  const auto g03 = run({"elsv-verify", "--genus", "0", "--n", "3"}).json();
  REQUIRE(g03["table"].size() == 1);
  CHECK(g03["table"][0]["value"] == "1");

  const auto grown = run({"elsv-verify", "--genus", "1", "--n", "2"}).json();
  CHECK(grown["held_out_points"].get<int>() >= 2);
  CHECK(grown["all_equal"] == true);
}

TEST_CASE("graphs command") {
  const auto e = run({"graphs", "enumerate", "--genus", "0", "--n", "4"});
  CHECK(e.code == 0);
  CHECK(e.json()["count"] == 3);
  const auto graph = e.json()["graphs"][0]["graph"];
  CHECK(graph["vertices"].size() == 2);
  CHECK(graph["edges"].size() == 1);
  CHECK(graph["legs"].size() == 4);
  CHECK(graph_from_json(graph).vertex_count() == 2);

  const auto c20 = run({"graphs", "connectivity", "--genus", "2", "--n", "0"}).json();
  CHECK(c20["components"] == 1);
  CHECK(c20["labeled"]["component_sizes"] == Json::array({2}));
  CHECK(c20["labeled"]["certificate_valid"] == true);
  const auto c11 = run({"graphs", "connectivity", "--genus", "1", "--n", "1"}).json();
  CHECK(c11["components"] == 1);
  CHECK(c11["labeled"]["component_sizes"] == Json::array({1}));
}

TEST_CASE("degenerate command") {
  const auto a = run({"degenerate", "--genus", "1", "--alpha", "2"});
  CHECK(a.code == 0);
  CHECK(a.json()["strata"].size() == 1);
  CHECK(a.json()["strata"][0]["weight"] == "1/2");
  CHECK(a.json()["match"] == true);

  const auto b = run({"degenerate", "--genus", "1", "--alpha", "1"}).json();
  CHECK(b["strata"].empty());
  CHECK(b["total"] == "0");
  CHECK(b["match"] == true);

  const auto c = run({"degenerate", "--genus", "0", "--alpha", "1,1,1"}).json();
  CHECK(c["strata"].size() == 1);
  CHECK(c["total"] == "24");
  CHECK(c["expected_total"] == "24");
}

TEST_CASE("manifests and determinism") {
  fresh_cache("manifest");
  const std::vector<std::string> args{"degenerate", "--genus", "1", "--alpha", "2,2"};
  const auto first = run(args);
  const auto again = run(args);
  CHECK(first.out == again.out);
  CHECK(first.manifest["output_digest"] == again.manifest["output_digest"]);
  CHECK(first.manifest["command"] == "degenerate");
  CHECK(first.manifest["parameters"]["alpha"] == "2,2");
  CHECK(first.manifest.contains("version"));
  CHECK(first.manifest.contains("wall_time_seconds"));
  CHECK(first.manifest["budget"]["search_space"].is_number());

  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "8"});
  CHECK(run(threaded).out == first.out);

  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.manifest["command"] == "taut");
}

TEST_CASE("cache is an optimization only") {
  const auto dir = fresh_cache("cache");
  const std::vector<std::string> args{"elsv-verify", "--genus", "1", "--n", "2", "--max-part", "4"};
  const auto uncached = run({"elsv-verify", "--genus", "1", "--n", "2", "--max-part", "4", "--no-cache"});
  CHECK_FALSE(std::filesystem::exists(dir / "cache.json"));
  const auto cold = run(args);
  REQUIRE(std::filesystem::exists(dir / "cache.json"));
  const auto warm = run(args);
  CHECK(cold.out == uncached.out);
  CHECK(warm.out == uncached.out);
  CHECK(cold.manifest["cache"]["hits"] == 0);
  CHECK(warm.manifest["cache"]["hits"].get<int>() > 0);

  std::ifstream in(dir / "cache.json");
  const auto file = Json::parse(in);
  CHECK(file["schema"] == "taut-cache/1");
  CHECK(file["hodge"].size() == 1);
  CHECK(hodge_table_from_json(file["hodge"][0]["table"]).size() == 3);

  // A corrupt cache is ignored and rewritten.
  { std::ofstream(dir / "cache.json") << "{not json"; }
  CHECK(run(args).out == uncached.out);
  std::ifstream again(dir / "cache.json");
  CHECK(Json::parse(again)["schema"] == "taut-cache/1");
  std::filesystem::remove_all(dir);
}
