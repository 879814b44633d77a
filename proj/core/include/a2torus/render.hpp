#pragma once

#include <string>

#include "a2torus/dynamics.hpp"

namespace a2t {

struct RenderOptions {
  int size = 640;
  bool greens = true;
  bool labels = true;
};

// SVG of the fundamental domain [0,1)^2 with y pointing up.
std::string render_svg(const Portrait& p, const RenderOptions& opt = {});

// Throws DomainError("IoError") when the file cannot be written.
void render_phase_portrait(const Portrait& p, const std::string& path, const RenderOptions& opt = {});

}  // namespace a2t
