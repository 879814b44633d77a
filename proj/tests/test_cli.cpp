#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "a2torus/errors.hpp"
#include "a2torus/surgery.hpp"
#include "commands.hpp"

using namespace a2t;
using Json = nlohmann::json;

namespace {

std::filesystem::path scratch() {
  auto p = std::filesystem::temp_directory_path() / "a2t_cli_test";
  std::filesystem::create_directories(p);
  return p;
}

Json run(cli::RunConfig cfg, const std::string& sub, int expect = 0) {
  cfg.subcommand = sub;
  std::ostringstream out;
  CHECK(cli::dispatch(cfg, out) == expect);
  return Json::parse(out.str());
}

void put(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string error_code(cli::RunConfig cfg, const std::string& sub) {
  cfg.subcommand = sub;
  std::ostringstream out;
  try {
    cli::dispatch(cfg, out);
  } catch (const DomainError& e) {
    return e.code();
  }
  return "";
}

}  // namespace

TEST_CASE("classify-matrix") {
  cli::RunConfig cfg;
  cfg.entries = "-1,-1,1,0";
  auto j = run(cfg, "classify-matrix");
  CHECK(j["schema"] == "1");
  CHECK(j["class"] == "A2");
  CHECK(j["conjugator"] == Json::array({1, 0, 0, 1}));
  cfg.entries = "2,1,1,1";
  CHECK(run(cfg, "classify-matrix")["conjugator"].is_null());
  cfg.entries = "1,2";
  CHECK(error_code(cfg, "classify-matrix") == "UsageError");
  cfg.entries = "2,0,0,2";
  CHECK(error_code(cfg, "classify-matrix") == "NotUnimodular");
}

TEST_CASE("knot-orbit and diophantine") {
  cli::RunConfig cfg;
  cfg.knot_class = "1,0";
  CHECK(run(cfg, "knot-orbit")["orbit"] == Json::parse("[[1,0],[-1,-1],[0,1]]"));
  cfg.epsilon = -1;
  CHECK(run(cfg, "diophantine")["solutions"].size() == 6);
  cfg.epsilon = 1;
  CHECK(run(cfg, "diophantine")["solutions"].empty());
}

TEST_CASE("check-counts exits nonzero on a failing verdict") {
  cli::RunConfig cfg;
  cfg.c0 = 1, cfg.c1 = 3, cfg.c2 = 2;
  CHECK(run(cfg, "check-counts")["pass"] == true);
  cfg.c1 = 1;
  auto j = run(cfg, "check-counts", 1);
  CHECK(j["pass"] == false);
  CHECK(j["violated"] == 2);
}

TEST_CASE("component, reduce and replay share the descriptor format") {
  auto dir = scratch();
  auto d = expand(canonical_descriptor(3), MoveKind::ExpandDisk, 4);
  put(dir / "d.json", descriptor_to_json(d));
  cli::RunConfig cfg;
  cfg.descriptor_in = (dir / "d.json").string();
  CHECK(run(cfg, "component")["component"] == 3);

  cfg.trace_out = (dir / "moves.json").string();
  auto r = run(cfg, "reduce");
  CHECK(r["canonical"] == true);
  CHECK(r["counts"] == Json::array({3, 6, 3}));
  put(dir / "result.json", r["result"].dump());
  cli::RunConfig again;
  again.descriptor_in = (dir / "result.json").string();
  CHECK(run(again, "component")["component"] == 3);

  cli::RunConfig replay;
  replay.descriptor_in = cfg.descriptor_in;
  replay.replay_in = cfg.trace_out;
  CHECK(run(replay, "reduce")["result"] == r["result"]);

  cfg.descriptor_in = (dir / "missing.json").string();
  CHECK(error_code(cfg, "component") == "IoError");
  put(dir / "bad.json", "{\"schema\":");
  cfg.descriptor_in = (dir / "bad.json").string();
  CHECK(error_code(cfg, "component") == "MalformedJson");
}

TEST_CASE("simulate feeds component, graph-eq and render") {
  auto dir = scratch();
  cli::RunConfig cfg;
  cfg.descriptor_out = (dir / "g1.json").string();
  cfg.cells_out = (dir / "g1_cells.json").string();
  cfg.portrait_out = (dir / "g1_portrait.json").string();
  auto j = run(cfg, "simulate");
  CHECK(j["component"] == 1);
  CHECK(j["counts"] == Json::array({1, 3, 2}));
  CHECK(j["rotation_numbers"].size() == 1);

  cli::RunConfig comp;
  comp.descriptor_in = cfg.descriptor_out;
  CHECK(run(comp, "component")["component"] == 1);

  cli::RunConfig second;
  second.seed = 9;
  second.extract.green_fraction = 0.7;
  second.cells_out = (dir / "g1b_cells.json").string();
  run(second, "simulate");
  cli::RunConfig eq;
  eq.left = cfg.cells_out;
  eq.right = second.cells_out;
  CHECK(run(eq, "graph-eq")["equivalent"] == true);

  cli::RunConfig rn;
  rn.portrait_in = cfg.portrait_out;
  rn.out = (dir / "g1.svg").string();
  CHECK(run(rn, "render")["separatrices"] == 12);
  CHECK(std::filesystem::file_size(rn.out) > 1000);
}

TEST_CASE("simulate with a potential file and a control matrix") {
  auto dir = scratch();
  put(dir / "f.json", potential_to_json(standard_potential()));
  cli::RunConfig cfg;
  cfg.potential = (dir / "f.json").string();
  cfg.direction = -1;
  CHECK(run(cfg, "simulate")["component"] == 2);

  cli::RunConfig ctl;
  ctl.matrix = "1,0,0,1";
  auto j = run(ctl, "simulate");
  REQUIRE(j["rotation_numbers"].size() == 1);
  CHECK(j["rotation_numbers"][0]["rotation"] == "0/1");

  cli::RunConfig bad;
  bad.potential = "g0-search";
  CHECK(error_code(bad, "simulate") == "UsageError");
}

TEST_CASE("identical configurations give identical output") {
  cli::RunConfig cfg;
  cfg.direction = -1;
  cfg.subcommand = "simulate";
  std::ostringstream a, b;
  cli::dispatch(cfg, a);
  cli::dispatch(cfg, b);
  CHECK(a.str() == b.str());
}
