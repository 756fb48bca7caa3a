#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "fixtures.hpp"
#include "rectpack/cli.hpp"
#include "rectpack/oracle.hpp"

using namespace rectpack;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("rectpack_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents = {}) const {
    const auto p = (path_ / name).string();
    if (!contents.empty()) std::ofstream(p) << contents;
    return p;
  }

 private:
  fs::path path_;
};

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("gen harmonic") {
  const auto r = run({"gen", "harmonic", "--n", "10"});
  REQUIRE(r.code == kExitOk);
  const Instance inst = parse_instance(r.out);
  CHECK(inst.size() == 10);
  CHECK(inst.rects[2].width == doctest::Approx(1.0 / 3.0));
  CHECK(inst.rects[2].height == doctest::Approx(0.25));
}

TEST_CASE("gen guillotine then verify") {
  TempDir dir;
  const auto inst_path = dir.file("g.json");
  const auto layout_path = dir.file("g.layout.json");
  const auto g = run({"gen", "guillotine", "--seed", "7", "--cuts", "5", "-o", inst_path, "--layout-out", layout_path});
  REQUIRE(g.code == kExitOk);
  CHECK(json::parse(g.out)["rects"] == 6);

  const auto v = run({"verify", inst_path, layout_path});
  CHECK(v.code == kExitOk);
  const auto doc = json::parse(v.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["corner_cancellation"] == true);
  CHECK(doc["max_moment_residual"].get<double>() <= 1e-9);
  CHECK(doc["smax"] == 8);
  // Generator coordinates survive the JSON round trip exactly.
  CHECK(run({"verify", "--exact", inst_path, layout_path}).code == kExitOk);

  // Same seed, same document.
  CHECK(run({"gen", "guillotine", "--seed", "7", "--cuts", "5"}).out ==
        run({"gen", "guillotine", "--seed", "7", "--cuts", "5"}).out);
}

TEST_CASE("gen family") {
  const auto r = run({"gen", "family", "--max-box", "3"});
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["count"].get<std::size_t>() == enumerate_small_family(3, 4).size());
  CHECK(doc["instances"].size() == doc["count"].get<std::size_t>());
  CHECK(run({"gen", "family", "--max-box", "9"}).code == kExitUsage);
  CHECK(run({"gen", "nonsense"}).code == kExitUsage);
}

TEST_CASE("solve dominoes writes the layout") {
  TempDir dir;
  const auto inst_path = dir.file("dom.json", R"({"box":[2,2],"rects":[[1,2],[1,2]]})");
  const auto r = run({"solve", inst_path, "--restarts", "16"});
  REQUIRE(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  CHECK(doc["status"] == "converged_verified");
  CHECK(doc["reason"] == "verified");
  const std::string written = doc["layout_path"];
  CHECK(written == dir.file("dom.layout.json"));
  REQUIRE(fs::exists(written));
  CHECK(run({"verify", inst_path, written}).code == kExitOk);

  const auto table = run({"solve", inst_path, "--restarts", "16", "--table", "-o", dir.file("t.json")});
  CHECK(table.code == kExitOk);
  CHECK(table.out.find("status      converged_verified") != std::string::npos);
}

TEST_CASE("solve reports area infeasibility") {
  TempDir dir;
  const auto inst_path = dir.file("bad.json", R"({"box":[2,1],"rects":[[1,1]]})");
  const auto r = run({"solve", inst_path});
  CHECK(r.code == kExitNegative);
  const auto doc = json::parse(r.out);
  CHECK(doc["status"] == "exhausted");
  CHECK(doc["reason"] == "area");
  CHECK(doc["layout_path"].is_null());
  CHECK_FALSE(fs::exists(dir.file("bad.layout.json")));
}

TEST_CASE("input errors exit with the usage code") {
  TempDir dir;
  CHECK(run({"solve", dir.file("missing.json")}).code == kExitUsage);
  CHECK(run({"solve", dir.file("junk.json", "{not json")}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);

  const auto inst = dir.file("i.json", R"({"box":[2,2],"rects":[[1,2],[1,2]]})");
  const auto short_layout = dir.file("l.json", R"({"placements":[[0,0,1,2]]})");
  const auto r = run({"verify", inst, short_layout});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(run({"solve", inst, "--mode", "sideways"}).code == kExitUsage);
}

TEST_CASE("verify itemizes overlaps") {
  TempDir dir;
  const auto inst = dir.file("i.json", R"({"box":[1,2],"rects":[[1,1],[1,1]]})");
  const auto layout = dir.file("l.json", R"({"placements":[[0,0,1,1],[0,0,1,1]]})");
  const auto r = run({"verify", inst, layout});
  CHECK(r.code == kExitNegative);
  const auto doc = json::parse(r.out);
  CHECK(doc["pass"] == false);
  REQUIRE(doc["overlap_violations"].size() == 1);
  CHECK(doc["overlap_violations"][0]["ids"] == json::array({1, 2}));
  CHECK(doc["overlap_violations"][0]["area"] == 1.0);

  const auto table = run({"verify", inst, layout, "--table"});
  CHECK(table.out.find("overlap 1 x 2") != std::string::npos);
}

TEST_CASE("verify --exact with rational input") {
  TempDir dir;
  const auto inst = dir.file("i.json", R"({"box":[1,1],"rects":[["1/3",1],["2/3",1]]})");
  const auto good = dir.file("g.json", R"({"placements":[[0,0,"1/3",1],["1/3",0,1,1]]})");
  const auto bad = dir.file("b.json", R"({"placements":[[0,0,"1/3",1],["333333/1000000",0,"999999/1000000",1]]})");
  const auto ok = run({"verify", "--exact", inst, good});
  CHECK(ok.code == kExitOk);
  CHECK(json::parse(ok.out)["pass"] == true);
  const auto nok = run({"verify", "--exact", inst, bad});
  CHECK(nok.code == kExitNegative);
  CHECK(json::parse(nok.out)["overlap_ok"] == false);
}

TEST_CASE("identities") {
  const auto r = run({"identities", "--n-trunc", "100000"});
  CHECK(r.code == kExitOk);
  const auto doc = json::parse(r.out);
  REQUIRE(doc["identities"].size() == 6);
  for (const auto& row : doc["identities"]) CHECK(row["abs_diff"].get<double>() <= 1e-6);
  CHECK(doc["consistent"] == true);

  const auto table = run({"identities", "--n-trunc", "1000", "--table"});
  CHECK(table.out.find("SUM_OF_SUM_SQ") != std::string::npos);
  CHECK(run({"identities", "--n-trunc", "0"}).code == kExitUsage);
}

TEST_CASE("render") {
  TempDir dir;
  const auto inst = dir.file("i.json", R"({"box":[1,1],"rects":[[1,1]]})");
  const auto layout = dir.file("l.json", R"({"placements":[[0,0,1,1]]})");
  const auto svg = dir.file("out.svg");
  REQUIRE(run({"render", inst, layout, svg}).code == kExitOk);
  CHECK(count(slurp(svg), "<rect") == 2);

  const auto [sq, sq_layout] = testing::squared_rectangle_32x33();
  const auto sq_inst = dir.file("sq.json", serialize_instance(sq));
  const auto sq_lay = dir.file("sq.layout.json", serialize_layout(sq_layout));
  const auto sq_svg = dir.file("sq.svg");
  REQUIRE(run({"render", sq_inst, sq_lay, sq_svg, "--no-labels"}).code == kExitOk);
  const std::string text = slurp(sq_svg);
  CHECK(count(text, "<rect") == 10);
  CHECK(count(text, "<text") == 0);
}

TEST_CASE("PACK_SEED overrides --seed") {
  ::setenv("PACK_SEED", "7", 1);
  const auto from_env = run({"gen", "guillotine", "--seed", "99", "--cuts", "5"});
  ::setenv("PACK_SEED", "oops", 1);
  const auto bad = run({"gen", "guillotine", "--cuts", "5"});
  ::unsetenv("PACK_SEED");
  const auto explicit_seed = run({"gen", "guillotine", "--seed", "7", "--cuts", "5"});
  CHECK(from_env.out == explicit_seed.out);
  CHECK(bad.code == kExitUsage);
}
