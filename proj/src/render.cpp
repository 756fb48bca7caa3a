#include "rectpack/render.hpp"

#include <cstdio>
#include <sstream>

namespace rectpack {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// Spread hues by the golden angle so neighbours in id order contrast.
std::string fill_for(int id) {
  const double hue = static_cast<double>((id * 137) % 360);
  return "hsl(" + fmt(hue) + ",55%,70%)";
}

}  // namespace

std::string render_svg(const Instance& inst, const Layout& layout, const RenderOptions& opts) {
  check_cardinality(inst, layout);
  const double k = opts.px_per_unit;
  const double m = opts.margin_px;
  const double W = inst.box.width * k;
  const double H = inst.box.height * k;

  // SVG y grows downward; flip so y = 0 is the bottom edge of the box.
  auto sx = [&](double x) { return m + x * k; };
  auto sy = [&](double y) { return m + H - y * k; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W + 2 * m) << "\" height=\""
      << fmt(H + 2 * m) << "\" viewBox=\"0 0 " << fmt(W + 2 * m) << ' ' << fmt(H + 2 * m) << "\">\n";
  svg << "  <rect class=\"box\" x=\"" << fmt(m) << "\" y=\"" << fmt(m) << "\" width=\"" << fmt(W)
      << "\" height=\"" << fmt(H) << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
  for (std::size_t i = 0; i < layout.size(); ++i) {
    const auto& p = layout.placements[i];
    const int id = inst.rects[i].id;
    svg << "  <rect class=\"piece\" data-id=\"" << id << "\" x=\"" << fmt(sx(p.x_lo)) << "\" y=\""
        << fmt(sy(p.y_hi)) << "\" width=\"" << fmt(p.dx() * k) << "\" height=\"" << fmt(p.dy() * k)
        << "\" fill=\"" << fill_for(id) << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    if (opts.labels) {
      svg << "  <text x=\"" << fmt(sx(p.cx())) << "\" y=\"" << fmt(sy(p.cy()))
          << "\" text-anchor=\"middle\" dominant-baseline=\"middle\" font-size=\"12\">" << id << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace rectpack
