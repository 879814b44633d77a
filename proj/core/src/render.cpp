#include "a2torus/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "a2torus/errors.hpp"

namespace a2t {

namespace {

constexpr int kMargin = 20;

struct Canvas {
  std::ostringstream out;
  int size;

  double sx(double x) const { return kMargin + x * size; }
  double sy(double y) const { return kMargin + (1 - y) * size; }

  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }

  // Splits a lifted curve wherever it leaves the fundamental domain.
  void curve(const std::vector<Vec2>& line, const std::string& color, double width) {
    std::string d;
    Vec2 prev{};
    bool open = false;
    for (const auto& q : line) {
      Vec2 p = wrap(q);
      if (open && (std::abs(p.x - prev.x) > 0.5 || std::abs(p.y - prev.y) > 0.5)) open = false;
      d += (open ? " L" : " M") + num(sx(p.x)) + " " + num(sy(p.y));
      open = true;
      prev = p;
    }
    if (d.empty()) return;
    out << "<path d=\"" << d.substr(1) << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"" << width << "\"/>\n";
  }
};

}  // namespace

std::string render_svg(const Portrait& p, const RenderOptions& opt) {
  Canvas c{{}, opt.size};
  int total = opt.size + 2 * kMargin;
  c.out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\"" << total
        << "\" viewBox=\"0 0 " << total << " " << total << "\">\n";
  c.out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << opt.size << "\" height=\""
        << opt.size << "\" fill=\"white\" stroke=\"black\"/>\n";
  if (opt.greens)
    for (const auto& g : p.greens) c.curve(g.polyline, "#2a9d3a", 0.8);
  for (const auto& s : p.separatrices)
    c.curve(s.polyline, is_unstable(s.slot) ? "#c62828" : "#1565c0", 1.4);
  for (const auto& n : p.nodes) {
    double x = c.sx(n.location.x), y = c.sy(n.location.y);
    switch (n.kind) {
      case OrbitKind::Sink:
        c.out << "<circle cx=\"" << Canvas::num(x) << "\" cy=\"" << Canvas::num(y)
              << "\" r=\"5\" fill=\"black\"/>\n";
        break;
      case OrbitKind::Source:
        c.out << "<circle cx=\"" << Canvas::num(x) << "\" cy=\"" << Canvas::num(y)
              << "\" r=\"5\" fill=\"white\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        break;
      case OrbitKind::Saddle:
        c.out << "<rect x=\"" << Canvas::num(x - 4) << "\" y=\"" << Canvas::num(y - 4)
              << "\" width=\"8\" height=\"8\" fill=\"#6a1b9a\"/>\n";
        break;
    }
    if (opt.labels)
      c.out << "<text x=\"" << Canvas::num(x + 7) << "\" y=\"" << Canvas::num(y - 7)
            << "\" font-size=\"10\" font-family=\"sans-serif\">" << n.id.orbit << "." << n.id.phase
            << "</text>\n";
  }
  if (opt.labels)
    for (const auto& k : p.knots)
      c.out << "<text x=\"" << Canvas::num(c.sx(k.at.x) + 7) << "\" y=\"" << Canvas::num(c.sy(k.at.y) + 14)
            << "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"#c62828\">&lt;" << k.knot.a << ","
            << k.knot.b << "&gt;</text>\n";
  c.out << "</svg>\n";
  return c.out.str();
}

void render_phase_portrait(const Portrait& p, const std::string& path, const RenderOptions& opt) {
  std::ofstream f(path);
  if (!f) throw DomainError("IoError", "cannot open " + path + " for writing");
  f << render_svg(p, opt);
  if (!f) throw DomainError("IoError", "failed writing " + path);
}

}  // namespace a2t
