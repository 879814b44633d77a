#pragma once

#include <cstdint>
#include <string>

#include "a2torus/dynamics.hpp"
#include "a2torus/intmat.hpp"
#include "a2torus/render.hpp"

namespace a2t::cli {

// Everything a subcommand reads. Numeric defaults come from the library configs.
struct RunConfig {
  std::string subcommand;

  // classify-matrix
  std::string entries;
  std::string policy = "sl";
  int bound = kDefaultBound;

  // knot-orbit, diophantine
  std::string knot_class;
  int epsilon = -1;

  // check-counts
  int c0 = 0, c1 = 0, c2 = 0;

  // component, reduce, graph-eq, render
  std::string descriptor_in;
  std::string left, right;
  std::string trace_out;
  std::string replay_in;
  std::string portrait_in;

  // simulate
  std::string potential = "std";
  int direction = 1;
  std::string matrix = "-1,-1,1,0";
  double step = IntegratorConfig{}.step;
  std::uint64_t seed = 0;
  ExtractConfig extract;

  // outputs
  std::string render_out;
  std::string descriptor_out;
  std::string cells_out;
  std::string portrait_out;
  std::string out;
  RenderOptions render;
};

}  // namespace a2t::cli
