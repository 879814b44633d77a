#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "a2torus/errors.hpp"
#include "commands.hpp"

namespace {

int fail(const std::string& code, const std::string& message, int status) {
  nlohmann::ordered_json j;
  j["schema"] = "1";
  j["error"] = code;
  j["message"] = message;
  std::cout << j.dump(2) << '\n';
  return status;
}

void add_tolerances(CLI::App* sub, a2t::cli::RunConfig& cfg) {
  auto& e = cfg.extract;
  sub->add_option("--step", cfg.step, "RK4 step for the unit-time flow");
  sub->add_option("--seed", cfg.seed, "Newton seed grid offset; 0 centers the seeds in their cells");
  sub->add_option("--grid", e.search.grid, "Newton seed grid per side");
  sub->add_option("--dedupe", e.search.dedupe, "Toroidal distance merging periodic points");
  sub->add_option("--fd-step", e.search.fd_step, "Finite-difference step for classification");
  sub->add_option("--delta", e.trace.delta, "Separatrix start offset along the eigenvector");
  sub->add_option("--capture", e.trace.capture, "Distance at which a trace is captured by a node");
  sub->add_option("--max-time", e.trace.max_time, "Trace time-out");
  sub->add_option("--entry-radius", e.entry_radius, "Circle radius for rotation numbers");
  sub->add_option("--cell-radius", e.cell_radius, "Circle radius for cell sectors");
  sub->add_option("--green-fraction", e.green_fraction, "Position of each green curve inside its sink sector")
      ->check(CLI::Range(0.05, 0.95));
}

void add_render(CLI::App* sub, a2t::cli::RunConfig& cfg) {
  sub->add_option("--size", cfg.render.size, "SVG width and height in pixels")->check(CLI::PositiveNumber);
  sub->add_flag("!--no-greens", cfg.render.greens, "Omit green curves");
  sub->add_flag("!--no-labels", cfg.render.labels, "Omit knot labels");
}

}  // namespace

int main(int argc, char** argv) {
  a2t::cli::RunConfig cfg;
  CLI::App app{"Gradient-like torus diffeomorphisms inducing A2"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  auto* cm = app.add_subcommand("classify-matrix", "Finite-order class of an integer matrix");
  cm->add_option("--entries", cfg.entries, "m00,m01,m10,m11")->required();
  cm->add_option("--policy", cfg.policy, "Conjugators: sl (det +1) or gl (det +-1)")
      ->check(CLI::IsMember({"sl", "gl"}));
  cm->add_option("--bound", cfg.bound, "Conjugator entry bound")->check(CLI::NonNegativeNumber);

  auto* ko = app.add_subcommand("knot-orbit", "Orbit of a homotopy class under A2");
  ko->add_option("--class", cfg.knot_class, "a,b")->required();

  auto* di = app.add_subcommand("diophantine", "Classes with -a^2 + ab - b^2 = epsilon");
  di->add_option("--epsilon", cfg.epsilon, "Right-hand side")->check(CLI::Range(-1, 1));

  auto* cc = app.add_subcommand("check-counts", "Lefschetz-Hopf and Morse relations on the torus");
  cc->add_option("--c0", cfg.c0, "Sinks")->required();
  cc->add_option("--c1", cfg.c1, "Saddles")->required();
  cc->add_option("--c2", cfg.c2, "Sources")->required();

  auto* co = app.add_subcommand("component", "Stable component of a descriptor");
  co->add_option("--descriptor", cfg.descriptor_in, "Descriptor JSON")->required();

  auto* ge = app.add_subcommand("graph-eq", "Equivalence of the three-color graphs of two cell files");
  ge->add_option("--left", cfg.left, "Cell data JSON")->required();
  ge->add_option("--right", cfg.right, "Cell data JSON")->required();

  auto* re = app.add_subcommand("reduce", "Surgery reduction to the simplest descriptor");
  re->add_option("--descriptor", cfg.descriptor_in, "Descriptor JSON")->required();
  re->add_option("--trace", cfg.trace_out, "Write the applied moves here");
  re->add_option("--replay", cfg.replay_in, "Apply the moves of a trace file instead of reducing");

  auto* si = app.add_subcommand("simulate", "Numerical model map: census, descriptor, cells, portrait");
  si->add_option("--potential", cfg.potential, "std, g0-search, or a potential JSON file");
  si->add_option("--direction", cfg.direction, "+1 uphill, -1 downhill")->check(CLI::IsMember({1, -1}));
  si->add_option("--matrix", cfg.matrix, "Induced matrix m00,m01,m10,m11");
  si->add_option("--descriptor", cfg.descriptor_out, "Write the descriptor JSON here");
  si->add_option("--cells", cfg.cells_out, "Write the cell data JSON here");
  si->add_option("--portrait", cfg.portrait_out, "Write the portrait JSON here");
  si->add_option("--render", cfg.render_out, "Write an SVG phase portrait here");
  add_tolerances(si, cfg);
  add_render(si, cfg);

  auto* rn = app.add_subcommand("render", "SVG from a portrait JSON");
  rn->add_option("--portrait", cfg.portrait_in, "Portrait JSON")->required();
  rn->add_option("--out", cfg.out, "SVG path")->required();
  add_render(rn, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fail("UsageError", e.what(), 2);
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    return a2t::cli::dispatch(cfg, std::cout);
  } catch (const a2t::DomainError& e) {
    return fail(e.code(), e.what(), e.code() == "UsageError" ? 2 : 1);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), 1);
  }
}
