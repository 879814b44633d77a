#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "a2torus/errors.hpp"
#include "a2torus/render.hpp"
#include "support/oracles.hpp"

using namespace a2t;

namespace {

ModelMap model(int direction, UniModularMatrix m = a2_matrix()) {
  ModelMap g;
  g.direction = direction;
  g.matrix = m;
  return g;
}

const Extraction& extraction(int direction) {
  static std::map<int, Extraction> cache;
  auto it = cache.find(direction);
  if (it == cache.end()) it = cache.emplace(direction, extract_descriptor(model(direction))).first;
  return it->second;
}

CellData fixture() {
  std::ifstream in(std::string(A2T_TEST_DATA) + "/g1_canonical_cells.json");
  std::stringstream s;
  s << in.rdbuf();
  return cells_from_json(s.str());
}

int census_index(const std::vector<PeriodicPointRecord>& c, Vec2 p) {
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    if (torus_distance(c[i].location, p) < 1e-8) return i;
  return -1;
}

OrbitKind expected_kind(int index, int direction) {
  if (index == 1) return OrbitKind::Saddle;
  bool max = index == 2;
  return (max == (direction > 0)) ? OrbitKind::Sink : OrbitKind::Source;
}

}  // namespace

TEST_CASE("standard potential values and derivatives") {
  auto f = standard_potential();
  for (double x : {0.0, 0.13, 0.5, 0.71})
    for (double y : {0.0, 0.29, 0.5, 0.9}) {
      Vec2 p{x, y};
      CHECK(f.value(p) == doctest::Approx(oracle::standard_value(x, y)).epsilon(1e-12));
      const double h = 1e-6;
      Vec2 g = f.gradient(p);
      CHECK(g.x == doctest::Approx((f.value({x + h, y}) - f.value({x - h, y})) / (2 * h)).epsilon(1e-6));
      CHECK(g.y == doctest::Approx((f.value({x, y + h}) - f.value({x, y - h})) / (2 * h)).epsilon(1e-6));
      Mat2 H = f.hessian(p);
      Vec2 gx = f.gradient({x + h, y}) - f.gradient({x - h, y});
      CHECK(H.a == doctest::Approx(gx.x / (2 * h)).epsilon(1e-5));
      CHECK(H.c == doctest::Approx(gx.y / (2 * h)).epsilon(1e-5));
    }
}

TEST_CASE("symmetrization averages over the cyclic group") {
  TrigPotential f{{{1, 0, 1.0}}, {}};
  auto s = symmetrize(f);
  for (Vec2 p : {Vec2{0.1, 0.7}, Vec2{0.35, 0.2}}) {
    double expect = (oracle::standard_value(p.x, p.y)) / 3;
    CHECK(s.value(p) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(s.value(act(p, a2_matrix())) == doctest::Approx(s.value(p)).epsilon(1e-12));
  }
  auto again = symmetrize(standard_potential());
  for (Vec2 p : {Vec2{0.2, 0.4}, Vec2{0.8, 0.15}})
    CHECK(again.value(p) == doctest::Approx(standard_potential().value(p)).epsilon(1e-12));

  TrigPotential b{{}, {{{1.0 / 3, 2.0 / 3}, 2.0, 0.3}}};
  auto sb = symmetrize(b);
  REQUIRE(sb.bumps.size() == 1);
  CHECK(sb.bumps[0].height == doctest::Approx(2.0));
  CHECK(torus_distance(sb.bumps[0].center, {1.0 / 3, 2.0 / 3}) < 1e-12);
}

TEST_CASE("model map fixes the critical fixed points and permutes the saddles") {
  auto g = model(1);
  for (Vec2 p : {Vec2{0, 0}, Vec2{1.0 / 3, 2.0 / 3}, Vec2{2.0 / 3, 1.0 / 3}})
    CHECK(torus_distance(model_map_eval(g, p), p) < 1e-12);
  CHECK(torus_distance(model_map_eval(g, {0.5, 0}), {0.5, 0.5}) < 1e-12);
  CHECK(torus_distance(iterate_lift(g, {0.5, 0}, 3), {0.5, 0}) < 1e-12);
}

TEST_CASE("map Jacobian agrees with finite differences") {
  auto g = model(-1);
  Vec2 p{0.21, 0.64};
  Mat2 j;
  map_lift(g, p, j);
  Mat2 fd = fd_jacobian(g, p, 1);
  CHECK(j.a == doctest::Approx(fd.a).epsilon(1e-6));
  CHECK(j.b == doctest::Approx(fd.b).epsilon(1e-6));
  CHECK(j.c == doctest::Approx(fd.c).epsilon(1e-6));
  CHECK(j.d == doctest::Approx(fd.d).epsilon(1e-6));
}

TEST_CASE("census of both directions matches the critical point analysis") {
  for (int dir : {1, -1}) {
    const auto& c = extraction(dir).census;
    CHECK(c.size() == 6);
    CHECK(extraction(dir).diverged == 0);
    for (const auto& cp : oracle::standard_critical_points()) {
      int i = census_index(c, {cp.x, cp.y});
      REQUIRE(i >= 0);
      CHECK(c[i].kind == expected_kind(cp.index, dir));
      CHECK(c[i].period == (cp.index == 1 ? 3 : 1));
    }
  }
}

TEST_CASE("identity matrix fixes every critical point") {
  auto s = find_periodic_points(model(1, identity()), 3);
  REQUIRE(s.points.size() == 6);
  for (const auto& p : s.points) CHECK(p.period == 1);
}

TEST_CASE("g1 saddle separatrices land on the fixed sink") {
  const auto& c = extraction(1).census;
  int sink = census_index(c, {0, 0});
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    if (c[i].kind != OrbitKind::Saddle) continue;
    for (auto b : {Branch::UPlus, Branch::UMinus}) CHECK(trace_separatrix(model(1), c, i, b).limit == sink);
    CHECK(c[trace_separatrix(model(1), c, i, Branch::SPlus).limit].kind == OrbitKind::Source);
  }
  CHECK_THROWS_AS(trace_separatrix(model(1), c, sink, Branch::UPlus), DomainError);
}

TEST_CASE("g1 closure classes form an admissible orbit") {
  const auto& d = extraction(1).descriptor;
  REQUIRE(d.closures.size() == 1);
  REQUIRE(d.closures[0].knot.has_value());
  auto o = orbit3(*d.closures[0].knot);
  auto adm = admissible_knot_types();
  for (const auto& k : o) CHECK(std::find(adm.begin(), adm.end(), k) != adm.end());
  CHECK(intersection_number(o[0], o[1]) == 1);
  CHECK(intersection_number(o[1], o[2]) == 1);
  CHECK(intersection_number(o[0], o[2]) == 1);
}

TEST_CASE("rotation numbers of fixed sinks") {
  auto [num, den] = oracle::g1_rotation({-1, -1, 1, 0});
  for (int dir : {1, -1}) {
    const auto& ex = extraction(dir);
    int sinks = 0;
    for (int i = 0; i < static_cast<int>(ex.census.size()); ++i) {
      if (ex.census[i].kind != OrbitKind::Sink) continue;
      ++sinks;
      auto r = rotation_number_of_sink(model(dir), ex.census, i);
      CHECK(r.denominator == 3);
      CHECK((r.numerator == 1 || r.numerator == 2));
      if (dir == 1) {
        CHECK(r.denominator == den);
        CHECK((r.numerator == num || r.numerator == den - num));
      }
    }
    CHECK(sinks == (dir == 1 ? 1 : 2));
  }
  auto control = model(1, identity());
  auto s = find_periodic_points(control, 1);
  int sink = census_index(s.points, {0, 0});
  REQUIRE(sink >= 0);
  auto r = rotation_number_of_sink(control, s.points, sink);
  CHECK(r.numerator == 0);
  CHECK(r.denominator == 1);
}

TEST_CASE("extracted descriptors are the canonical ones") {
  CHECK(descriptors_isomorphic(extraction(1).descriptor, canonical_descriptor(1)));
  CHECK(descriptors_isomorphic(extraction(-1).descriptor, canonical_descriptor(2)));
  CHECK(component_id(extraction(1).descriptor) == 1);
  CHECK(component_id(extraction(-1).descriptor) == 2);
}

TEST_CASE("simulated cells reproduce the canonical three-color graph") {
  auto canon = build_tricolor(fixture());
  auto g1 = build_tricolor(extraction(1).cells);
  auto g2 = build_tricolor(extraction(-1).cells);
  CHECK(tricolor_equivalent(g1, canon).has_value());
  CHECK_FALSE(tricolor_equivalent(g2, canon).has_value());
  CHECK(g2.bicolor_cycles(EdgeColor::Red, EdgeColor::Green).size() == 2);

  ExtractConfig other;
  other.green_fraction = 0.3;
  other.search.grid_offset = {0.31, 0.77};
  auto m = model(1);
  m.integrator.step = 2e-3;
  auto g1b = build_tricolor(extract_descriptor(m, other).cells);
  CHECK(tricolor_equivalent(g1, g1b).has_value());
}

TEST_CASE("g0 potential screens to the expected critical census") {
  auto cc = critical_points(g0_potential(4, 0.45));
  CHECK(cc.maxima == 3);
  CHECK(cc.saddles == 6);
  CHECK(cc.minima == 3);
  auto grid = g0_scan_grid();
  REQUIRE(grid.size() == 9);
  CHECK(grid.front().height == 2.0);
  CHECK(grid.back().width == 0.6);
  auto plain = critical_points(standard_potential());
  CHECK(plain.maxima == 1);
  CHECK(plain.saddles == 3);
  CHECK(plain.minima == 2);
}

TEST_CASE("potential JSON round trip and validation") {
  auto f = g0_potential(4, 0.45);
  auto text = potential_to_json(f);
  auto back = potential_from_json(text);
  CHECK(potential_to_json(back) == text);
  for (Vec2 p : {Vec2{0.3, 0.6}, Vec2{0.9, 0.05}}) CHECK(back.value(p) == doctest::Approx(f.value(p)));
  CHECK_THROWS_AS(potential_from_json(R"({"schema":"1","terms":[],"bumps":[{"center":[0,0],"height":1,"width":2}]})"),
                  DomainError);
}

TEST_CASE("portrait JSON and SVG") {
  const auto& p = extraction(1).portrait;
  CHECK(p.nodes.size() == 6);
  CHECK(p.separatrices.size() == 12);
  auto text = portrait_to_json(p);
  CHECK(portrait_to_json(portrait_from_json(text)) == text);
  auto svg = render_svg(p);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("&lt;") != std::string::npos);
  RenderOptions bare;
  bare.labels = false;
  CHECK(render_svg(p, bare).find("&lt;") == std::string::npos);
  CHECK_THROWS_AS(render_phase_portrait(p, "/nonexistent/dir/x.svg"), DomainError);
}
