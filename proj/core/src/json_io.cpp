#include <json.hpp>

#include "a2torus/descriptor.hpp"
#include "a2torus/dynamics.hpp"
#include "a2torus/errors.hpp"
#include "a2torus/surgery.hpp"
#include "a2torus/tricolor.hpp"

namespace a2t {

namespace {

using Json = nlohmann::ordered_json;

Json pair_json(const TorusKnotClass& k) { return Json::array({k.a, k.b}); }

TorusKnotClass pair_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("MalformedJson", "expected [a,b]");
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw DomainError("MalformedJson", e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw DomainError("MalformedJson", e.what());
  }
}

}  // namespace

std::string descriptor_to_json(const DiffeoDescriptor& d) {
  Json j;
  j["schema"] = "1";
  auto e = d.matrix.entries();
  j["matrix"] = Json::array({e[0], e[1], e[2], e[3]});
  j["orbits"] = Json::array();
  for (const auto& o : d.orbits) {
    Json r;
    r["id"] = o.id;
    r["kind"] = kind_name(o.kind);
    r["period"] = o.period;
    r["orientation"] = o.orientation == Orientation::Positive ? "positive" : "negative";
    if (o.period == 1) r["anchor"] = pair_json(o.anchor);
    j["orbits"].push_back(r);
  }
  j["separatrices"] = Json::array();
  for (const auto& s : d.separatrices) {
    Json r;
    r["saddle"] = s.saddle;
    r["slot"] = slot_name(s.slot);
    r["target"] = s.target;
    r["phase"] = s.phase;
    r["deck"] = pair_json(s.deck);
    j["separatrices"].push_back(r);
  }
  j["closures"] = Json::array();
  for (const auto& c : d.closures) {
    Json r;
    r["saddle"] = c.saddle;
    r["knot"] = c.knot ? pair_json(*c.knot) : Json(nullptr);
    j["closures"].push_back(r);
  }
  return j.dump(2);
}

DiffeoDescriptor descriptor_from_json(const std::string& text) {
  Json j = parse(text);
  return guarded([&] {
    DiffeoDescriptor d;
    const auto& m = j.at("matrix");
    if (!m.is_array() || m.size() != 4) throw DomainError("MalformedJson", "matrix needs 4 entries");
    d.matrix = make_matrix(m[0].get<std::int64_t>(), m[1].get<std::int64_t>(),
                           m[2].get<std::int64_t>(), m[3].get<std::int64_t>());
    for (const auto& r : j.at("orbits")) {
      OrbitRecord o;
      o.id = r.at("id").get<int>();
      o.kind = parse_kind(r.at("kind").get<std::string>());
      o.period = r.at("period").get<int>();
      std::string orient = r.value("orientation", "positive");
      if (orient != "positive" && orient != "negative")
        throw DomainError("MalformedJson", "unknown orientation " + orient);
      o.orientation = orient == "positive" ? Orientation::Positive : Orientation::Negative;
      if (r.contains("anchor")) o.anchor = pair_from(r["anchor"]);
      d.orbits.push_back(o);
    }
    for (const auto& r : j.at("separatrices")) {
      SeparatrixRecord s;
      s.saddle = r.at("saddle").get<int>();
      s.slot = parse_slot(r.at("slot").get<std::string>());
      s.target = r.at("target").get<int>();
      s.phase = r.value("phase", 0);
      if (r.contains("deck")) s.deck = pair_from(r["deck"]);
      d.separatrices.push_back(s);
    }
    for (const auto& s : d.separatrices)
      if (!d.has_orbit(s.saddle) || !d.has_orbit(s.target))
        throw DomainError("MalformedDescriptor", "separatrix references an unknown orbit");
    normalize(d);
    return d;
  });
}

std::string cells_to_json(const CellData& c) {
  Json j;
  j["schema"] = "1";
  j["regions"] = Json::array();
  for (const auto& r : c.regions) {
    Json b = Json::array();
    for (const auto& e : r.boundary) b.push_back({{"curve", e.curve}, {"color", color_name(e.color)}});
    j["regions"].push_back({{"id", r.id}, {"boundary", b}});
  }
  j["permutation"] = Json::object();
  for (const auto& [k, v] : c.permutation) j["permutation"][k] = v;
  return j.dump(2);
}

CellData cells_from_json(const std::string& text) {
  Json j = parse(text);
  return guarded([&] {
    CellData c;
    for (const auto& r : j.at("regions")) {
      CellRegion reg;
      reg.id = r.at("id").get<std::string>();
      for (const auto& b : r.at("boundary"))
        reg.boundary.push_back({b.at("curve").get<std::string>(),
                                parse_color(b.at("color").get<std::string>())});
      c.regions.push_back(reg);
    }
    for (const auto& [k, v] : j.at("permutation").items()) c.permutation[k] = v.get<std::string>();
    return c;
  });
}

std::string moves_to_json(const std::vector<Move>& moves) {
  Json j;
  j["schema"] = "1";
  j["moves"] = Json::array();
  for (const auto& m : moves) {
    Json r;
    r["kind"] = move_kind_name(m.kind);
    r["side"] = kind_name(m.side);
    switch (m.kind) {
      case MoveKind::CollapseDisk:
        r["kept"] = m.kept;
        r["removed"] = m.removed;
        break;
      case MoveKind::ConfluenceAnnulus:
        r["node"] = m.node;
        break;
      case MoveKind::ExpandDisk:
      case MoveKind::ExpandAnnulus:
        r["saddle"] = m.saddle;
        r["stable_slot"] = slot_name(m.stable_slot);
        r["unstable_slot"] = slot_name(m.unstable_slot);
        r["new_saddle"] = m.new_saddle;
        r["new_node"] = m.new_node;
        break;
    }
    j["moves"].push_back(r);
  }
  return j.dump(2);
}

std::vector<Move> moves_from_json(const std::string& text) {
  Json j = parse(text);
  return guarded([&] {
    std::vector<Move> out;
    for (const auto& r : j.at("moves")) {
      Move m;
      m.kind = parse_move_kind(r.at("kind").get<std::string>());
      m.side = parse_kind(r.at("side").get<std::string>());
      m.kept = r.value("kept", -1);
      if (r.contains("removed")) m.removed = r["removed"].get<std::vector<int>>();
      m.node = r.value("node", -1);
      m.saddle = r.value("saddle", -1);
      if (r.contains("stable_slot")) m.stable_slot = parse_slot(r["stable_slot"].get<std::string>());
      if (r.contains("unstable_slot"))
        m.unstable_slot = parse_slot(r["unstable_slot"].get<std::string>());
      m.new_saddle = r.value("new_saddle", -1);
      m.new_node = r.value("new_node", -1);
      out.push_back(m);
    }
    return out;
  });
}

namespace {

Json point_json(Vec2 p) { return Json::array({p.x, p.y}); }

Vec2 point_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("MalformedJson", "expected [x,y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json polyline_json(const std::vector<Vec2>& line) {
  Json a = Json::array();
  for (const auto& p : line) a.push_back(point_json(p));
  return a;
}

std::vector<Vec2> polyline_from(const Json& j) {
  std::vector<Vec2> out;
  for (const auto& p : j) out.push_back(point_from(p));
  return out;
}

Json point_id_json(PointId p) { return Json::array({p.orbit, p.phase}); }

PointId point_id_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("MalformedJson", "expected [orbit,phase]");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

std::string potential_to_json(const TrigPotential& f) {
  Json j;
  j["schema"] = "1";
  j["terms"] = Json::array();
  for (const auto& t : f.terms) j["terms"].push_back({{"p", t.p}, {"q", t.q}, {"c", t.c}});
  j["bumps"] = Json::array();
  for (const auto& b : f.bumps)
    j["bumps"].push_back({{"center", point_json(b.center)}, {"height", b.height}, {"width", b.width}});
  return j.dump(2);
}

TrigPotential potential_from_json(const std::string& text) {
  Json j = parse(text);
  return guarded([&] {
    TrigPotential f;
    for (const auto& t : j.at("terms"))
      f.terms.push_back({t.at("p").get<int>(), t.at("q").get<int>(), t.at("c").get<double>()});
    if (j.contains("bumps"))
      for (const auto& b : j["bumps"]) {
        Bump bump{point_from(b.at("center")), b.at("height").get<double>(), b.at("width").get<double>()};
        if (!(bump.width > 0) || bump.width > 0.7)
          throw DomainError("MalformedJson", "bump width must lie in (0, 0.7]");
        f.bumps.push_back(bump);
      }
    return f;
  });
}

std::string portrait_to_json(const Portrait& p) {
  Json j;
  j["schema"] = "1";
  j["nodes"] = Json::array();
  for (const auto& n : p.nodes)
    j["nodes"].push_back({{"point", point_id_json(n.id)}, {"kind", kind_name(n.kind)}, {"at", point_json(n.location)}});
  j["separatrices"] = Json::array();
  for (const auto& s : p.separatrices)
    j["separatrices"].push_back({{"saddle", point_id_json(s.saddle)},
                                 {"slot", slot_name(s.slot)},
                                 {"target", point_id_json(s.target)},
                                 {"deck", pair_json(s.deck)},
                                 {"polyline", polyline_json(s.polyline)}});
  j["greens"] = Json::array();
  for (const auto& g : p.greens) j["greens"].push_back({{"name", g.name}, {"polyline", polyline_json(g.polyline)}});
  j["knots"] = Json::array();
  for (const auto& k : p.knots)
    j["knots"].push_back({{"saddle", k.saddle}, {"knot", pair_json(k.knot)}, {"at", point_json(k.at)}});
  return j.dump();
}

Portrait portrait_from_json(const std::string& text) {
  Json j = parse(text);
  return guarded([&] {
    Portrait p;
    for (const auto& n : j.at("nodes"))
      p.nodes.push_back({point_id_from(n.at("point")), parse_kind(n.at("kind").get<std::string>()),
                         point_from(n.at("at"))});
    for (const auto& s : j.at("separatrices"))
      p.separatrices.push_back({point_id_from(s.at("saddle")), parse_slot(s.at("slot").get<std::string>()),
                                point_id_from(s.at("target")), pair_from(s.at("deck")),
                                polyline_from(s.at("polyline"))});
    if (j.contains("greens"))
      for (const auto& g : j["greens"])
        p.greens.push_back({g.at("name").get<std::string>(), polyline_from(g.at("polyline"))});
    if (j.contains("knots"))
      for (const auto& k : j["knots"])
        p.knots.push_back({k.at("saddle").get<int>(), pair_from(k.at("knot")), point_from(k.at("at"))});
    return p;
  });
}

}  // namespace a2t
