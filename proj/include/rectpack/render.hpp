#pragma once

#include <string>

#include "rectpack/instance.hpp"

namespace rectpack {

struct RenderOptions {
  double px_per_unit = 100.0;
  double margin_px = 10.0;
  bool labels = true;
};

/// SVG drawing with the origin at the bottom-left: one <rect> for the box
/// outline and one per placement, plus optional id labels.
std::string render_svg(const Instance& inst, const Layout& layout, const RenderOptions& opts = {});

}  // namespace rectpack
