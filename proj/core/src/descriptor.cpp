#include "a2torus/descriptor.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "a2torus/errors.hpp"

namespace a2t {

namespace {

[[noreturn]] void malformed(const std::string& why) {
  throw DomainError("MalformedDescriptor", why);
}

int mod(int a, int p) { return ((a % p) + p) % p; }

Slot mirror_slot(Slot s) {
  switch (s) {
    case Slot::U1: return Slot::S1;
    case Slot::U2: return Slot::S2;
    case Slot::S1: return Slot::U1;
    case Slot::S2: return Slot::U2;
  }
  return s;
}

}  // namespace

std::string kind_name(OrbitKind k) {
  switch (k) {
    case OrbitKind::Sink: return "sink";
    case OrbitKind::Source: return "source";
    case OrbitKind::Saddle: return "saddle";
  }
  return "?";
}

OrbitKind parse_kind(const std::string& s) {
  if (s == "sink") return OrbitKind::Sink;
  if (s == "source") return OrbitKind::Source;
  if (s == "saddle") return OrbitKind::Saddle;
  malformed("unknown orbit kind " + s);
}

std::string slot_name(Slot s) {
  switch (s) {
    case Slot::U1: return "unstable-1";
    case Slot::U2: return "unstable-2";
    case Slot::S1: return "stable-1";
    case Slot::S2: return "stable-2";
  }
  return "?";
}

Slot parse_slot(const std::string& s) {
  if (s == "unstable-1") return Slot::U1;
  if (s == "unstable-2") return Slot::U2;
  if (s == "stable-1") return Slot::S1;
  if (s == "stable-2") return Slot::S2;
  malformed("unknown slot " + s);
}

const OrbitRecord& DiffeoDescriptor::orbit(int id) const {
  for (const auto& o : orbits)
    if (o.id == id) return o;
  malformed("no orbit with id " + std::to_string(id));
}

bool DiffeoDescriptor::has_orbit(int id) const {
  return std::any_of(orbits.begin(), orbits.end(), [&](const auto& o) { return o.id == id; });
}

const SeparatrixRecord& DiffeoDescriptor::separatrix(int saddle, Slot slot) const {
  for (const auto& s : separatrices)
    if (s.saddle == saddle && s.slot == slot) return s;
  malformed("saddle " + std::to_string(saddle) + " lacks " + slot_name(slot));
}

SeparatrixRecord& DiffeoDescriptor::separatrix(int saddle, Slot slot) {
  for (auto& s : separatrices)
    if (s.saddle == saddle && s.slot == slot) return s;
  malformed("saddle " + std::to_string(saddle) + " lacks " + slot_name(slot));
}

std::vector<int> DiffeoDescriptor::ids_of(OrbitKind k) const {
  std::vector<int> out;
  for (const auto& o : orbits)
    if (o.kind == k) out.push_back(o.id);
  return out;
}

int DiffeoDescriptor::next_id() const {
  int m = -1;
  for (const auto& o : orbits) m = std::max(m, o.id);
  return m + 1;
}

void normalize(DiffeoDescriptor& d) {
  std::sort(d.orbits.begin(), d.orbits.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (size_t i = 1; i < d.orbits.size(); ++i)
    if (d.orbits[i].id == d.orbits[i - 1].id)
      malformed("duplicate orbit id " + std::to_string(d.orbits[i].id));
  for (const auto& o : d.orbits)
    if (o.period < 1) malformed("orbit " + std::to_string(o.id) + " has period < 1");
  std::sort(d.separatrices.begin(), d.separatrices.end(), [](const auto& a, const auto& b) {
    return std::pair(a.saddle, a.slot) < std::pair(b.saddle, b.slot);
  });
  std::map<int, int> per_saddle;
  for (auto& s : d.separatrices) {
    const auto& sad = d.orbit(s.saddle);
    if (sad.kind != OrbitKind::Saddle)
      malformed("separatrix attached to non-saddle orbit " + std::to_string(s.saddle));
    const auto& tgt = d.orbit(s.target);
    OrbitKind want = is_unstable(s.slot) ? OrbitKind::Sink : OrbitKind::Source;
    if (tgt.kind != want)
      malformed("separatrix " + slot_name(s.slot) + " of saddle " + std::to_string(s.saddle) +
                " targets a " + kind_name(tgt.kind));
    if (s.phase < 0 || s.phase >= tgt.period)
      malformed("phase out of range on saddle " + std::to_string(s.saddle));
    ++per_saddle[s.saddle];
  }
  for (size_t i = 1; i < d.separatrices.size(); ++i)
    if (d.separatrices[i].saddle == d.separatrices[i - 1].saddle &&
        d.separatrices[i].slot == d.separatrices[i - 1].slot)
      malformed("duplicate slot on saddle " + std::to_string(d.separatrices[i].saddle));
  for (const auto& o : d.orbits)
    if (o.kind == OrbitKind::Saddle && per_saddle[o.id] != 4)
      malformed("saddle " + std::to_string(o.id) + " does not have 4 separatrices");

  d.closures.clear();
  for (const auto& o : d.orbits) {
    if (o.kind != OrbitKind::Saddle) continue;
    const auto& u1 = d.separatrix(o.id, Slot::U1);
    const auto& u2 = d.separatrix(o.id, Slot::U2);
    SaddleClosureClass c{o.id, std::nullopt};
    if (u1.target == u2.target && u1.phase == u2.phase) c.knot = u2.deck - u1.deck;
    d.closures.push_back(c);
  }
}

MorseCounts counts(const DiffeoDescriptor& d) {
  MorseCounts c;
  for (const auto& o : d.orbits) {
    if (o.kind == OrbitKind::Sink) c.c0 += o.period;
    if (o.kind == OrbitKind::Saddle) c.c1 += o.period;
    if (o.kind == OrbitKind::Source) c.c2 += o.period;
  }
  return c;
}

G2Verdict validate_G2(const DiffeoDescriptor& d) {
  if (!is_similar(a2_matrix(), d.matrix)) return {false, "matrix is not similar to A2"};
  int fixed = 0;
  for (const auto& o : d.orbits) {
    if (o.period != 1) continue;
    ++fixed;
    if (o.kind == OrbitKind::Saddle) return {false, "a fixed orbit is a saddle"};
  }
  if (fixed != 3) return {false, "expected exactly three fixed orbits, found " + std::to_string(fixed)};
  for (const auto& o : d.orbits)
    if (o.period != 1 && o.period != 3)
      return {false, "orbit " + std::to_string(o.id) + " has period " + std::to_string(o.period) +
                         ", expected 3"};
  if (d.ids_of(OrbitKind::Saddle).empty()) return {false, "no saddle orbit"};
  for (const auto& o : d.orbits)
    if (o.kind == OrbitKind::Saddle && o.orientation != Orientation::Positive)
      return {false, "saddle " + std::to_string(o.id) + " has negative orientation type"};
  auto v = check_lefschetz_hopf(counts(d));
  if (!v.pass) return {false, "Lefschetz-Hopf: " + v.message};
  return {};
}

int component_id(const DiffeoDescriptor& d) {
  auto v = validate_G2(d);
  if (!v.pass) throw DomainError("InvalidDescriptor", v.clause);
  int n = 0;
  for (const auto& o : d.orbits)
    if (o.kind == OrbitKind::Sink && o.period == 1) ++n;
  return n;
}

DiffeoDescriptor mirror(const DiffeoDescriptor& d) {
  DiffeoDescriptor m = d;
  for (auto& o : m.orbits) {
    if (o.kind == OrbitKind::Sink)
      o.kind = OrbitKind::Source;
    else if (o.kind == OrbitKind::Source)
      o.kind = OrbitKind::Sink;
  }
  for (auto& s : m.separatrices) s.slot = mirror_slot(s.slot);
  normalize(m);
  return m;
}

DiffeoDescriptor canonical_descriptor(int i) {
  using K = OrbitKind;
  DiffeoDescriptor d;
  switch (i) {
    case 1:
      d.orbits = {{0, K::Sink, 1, Orientation::Positive, {0, 0}},
                  {1, K::Source, 1, Orientation::Positive, {0, -1}},
                  {2, K::Source, 1, Orientation::Positive, {-1, -1}},
                  {3, K::Saddle, 3, Orientation::Positive, {}}};
      d.separatrices = {{3, Slot::U1, 0, 0, {0, 0}},
                        {3, Slot::U2, 0, 0, {1, 0}},
                        {3, Slot::S1, 2, 0, {0, 0}},
                        {3, Slot::S2, 1, 0, {0, -1}}};
      break;
    case 0:
      d.orbits = {{0, K::Source, 1, Orientation::Positive, {0, 0}},
                  {1, K::Source, 1, Orientation::Positive, {0, -1}},
                  {2, K::Source, 1, Orientation::Positive, {-1, -1}},
                  {3, K::Sink, 3, Orientation::Positive, {}},
                  {4, K::Saddle, 3, Orientation::Positive, {}},
                  {5, K::Saddle, 3, Orientation::Positive, {}}};
      d.separatrices = {{4, Slot::U1, 3, 1, {0, 1}},   {4, Slot::U2, 3, 0, {0, 0}},
                        {4, Slot::S1, 1, 0, {0, 0}},   {4, Slot::S2, 0, 0, {0, 0}},
                        {5, Slot::U1, 3, 0, {-1, -1}}, {5, Slot::U2, 3, 1, {0, 0}},
                        {5, Slot::S1, 2, 0, {-1, -1}}, {5, Slot::S2, 0, 0, {0, 0}}};
      break;
    case 2: return mirror(canonical_descriptor(1));
    case 3: return mirror(canonical_descriptor(0));
    default: throw DomainError("OutOfRange", "component index must be 0..3");
  }
  normalize(d);
  return d;
}

TorusKnotClass transport_gain(const DiffeoDescriptor& d, int saddle_orbit, int target_orbit,
                              const TorusKnotClass& gain) {
  const auto& s = d.orbit(saddle_orbit);
  const auto& t = d.orbit(target_orbit);
  TorusKnotClass cs = s.period == 1 ? s.anchor : TorusKnotClass{};
  TorusKnotClass ct = t.period == 1 ? t.anchor : TorusKnotClass{};
  return act(gain, d.matrix) + ct - cs;
}

std::vector<PointSeparatrix> expand_points(const DiffeoDescriptor& d) {
  std::vector<PointSeparatrix> out;
  for (const auto& s : d.separatrices) {
    const auto& sad = d.orbit(s.saddle);
    const auto& tgt = d.orbit(s.target);
    PointSeparatrix p{{s.saddle, 0}, s.slot, {s.target, s.phase}, s.deck};
    for (int k = 0; k < sad.period; ++k) {
      out.push_back(p);
      p.saddle.phase = k + 1;
      p.target.phase = mod(p.target.phase + 1, tgt.period);
      p.gain = transport_gain(d, s.saddle, s.target, p.gain);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::tie(a.saddle, a.slot) < std::tie(b.saddle, b.slot);
  });
  return out;
}

GammaComplex gamma_complex(const DiffeoDescriptor& d, int sink_orbit) {
  if (!d.has_orbit(sink_orbit) || d.orbit(sink_orbit).kind != OrbitKind::Sink)
    throw DomainError("NotASink", "orbit " + std::to_string(sink_orbit) + " is not a sink");
  GammaComplex c;
  std::map<PointId, int> index;
  auto vertex = [&](PointId p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    int v = static_cast<int>(c.vertices.size());
    c.vertices.push_back({p});
    index[p] = v;
    return v;
  };
  for (const auto& o : d.orbits) {
    if (o.kind != OrbitKind::Saddle) continue;
    const auto& u1 = d.separatrix(o.id, Slot::U1);
    const auto& u2 = d.separatrix(o.id, Slot::U2);
    if (u1.target != sink_orbit && u2.target != sink_orbit) continue;
    GammaEdge e;
    e.saddle = o.id;
    e.from = vertex({u1.target, u1.phase});
    e.to = vertex({u2.target, u2.phase});
    e.homotopy = u2.deck - u1.deck;
    c.edges.push_back(e);
  }
  return c;
}

TorusKnotClass loop_class(const GammaComplex& c, const std::vector<WalkStep>& cycle) {
  if (cycle.empty()) return {};
  TorusKnotClass sum;
  int start = -1, at = -1;
  for (const auto& st : cycle) {
    if (st.edge < 0 || st.edge >= static_cast<int>(c.edges.size()))
      throw DomainError("NotAClosedWalk", "edge index out of range");
    const auto& e = c.edges[st.edge];
    if (!e.homotopy)
      throw DomainError("MissingHomotopyData",
                        "edge of saddle " + std::to_string(e.saddle) + " has no homotopy data");
    int from = st.forward ? e.from : e.to;
    int to = st.forward ? e.to : e.from;
    if (start < 0) start = from;
    if (at >= 0 && at != from) throw DomainError("NotAClosedWalk", "walk is not contiguous");
    sum = st.forward ? sum + *e.homotopy : sum - *e.homotopy;
    at = to;
  }
  if (at != start) throw DomainError("NotAClosedWalk", "walk does not close up");
  return sum;
}

namespace {

struct IsoSearch {
  const DiffeoDescriptor& x;
  const DiffeoDescriptor& y;
  std::vector<PointSeparatrix> px;
  std::map<int, int> map, inv, shift;
  std::vector<int> saddles_x;

  const PointSeparatrix& point_sep(int saddle, int phase, Slot slot) const {
    for (const auto& p : px)
      if (p.saddle.orbit == saddle && p.saddle.phase == phase && p.slot == slot) return p;
    malformed("missing point separatrix");
  }

  static Slot swapped(Slot s, bool us, bool ss) {
    if (us && s == Slot::U1) return Slot::U2;
    if (us && s == Slot::U2) return Slot::U1;
    if (ss && s == Slot::S1) return Slot::S2;
    if (ss && s == Slot::S2) return Slot::S1;
    return s;
  }

  bool compatible(const OrbitRecord& a, const OrbitRecord& b) const {
    return a.kind == b.kind && a.period == b.period;
  }

  bool bind(int ox, int oy, int sh, std::vector<int>& undo) {
    auto it = map.find(ox);
    if (it != map.end()) return it->second == oy && shift[ox] == sh;
    if (inv.count(oy)) return false;
    if (!compatible(x.orbit(ox), y.orbit(oy))) return false;
    map[ox] = oy;
    inv[oy] = ox;
    shift[ox] = sh;
    undo.push_back(ox);
    return true;
  }

  void unbind(const std::vector<int>& undo) {
    for (int ox : undo) {
      inv.erase(map[ox]);
      map.erase(ox);
      shift.erase(ox);
    }
  }

  bool search(size_t i) {
    if (i == saddles_x.size()) return map.size() == x.orbits.size() && final_check();
    int sx = saddles_x[i];
    const auto& ox = x.orbit(sx);
    for (int sy : y.ids_of(OrbitKind::Saddle)) {
      if (inv.count(sy) || !compatible(ox, y.orbit(sy))) continue;
      for (int delta = 0; delta < ox.period; ++delta)
        for (int us = 0; us < 2; ++us)
          for (int ss = 0; ss < 2; ++ss) {
            std::vector<int> undo;
            bool ok = bind(sx, sy, delta, undo);
            for (Slot s : {Slot::U1, Slot::U2, Slot::S1, Slot::S2}) {
              if (!ok) break;
              const auto& a = point_sep(sx, delta, s);
              const auto& b = y.separatrix(sy, swapped(s, us, ss));
              int p = x.orbit(a.target.orbit).period;
              ok = bind(a.target.orbit, b.target, mod(a.target.phase - b.phase, p), undo);
            }
            if (ok && search(i + 1)) return true;
            unbind(undo);
          }
    }
    return false;
  }

  PointId image(PointId p) const {
    int per = x.orbit(p.orbit).period;
    return {map.at(p.orbit), mod(p.phase - shift.at(p.orbit), per)};
  }

  // Closure classes and classes of two-edge cycles, per saddle point and up to sign.
  using Signature = std::map<std::pair<PointId, PointId>, std::vector<TorusKnotClass>>;

  static void collect(const std::vector<PointSeparatrix>& pts, bool unstable,
                      const std::function<PointId(PointId)>& rename,
                      std::map<PointId, std::optional<TorusKnotClass>>& closures,
                      Signature& cycles) {
    std::map<PointId, std::vector<const PointSeparatrix*>> by_saddle;
    for (const auto& p : pts)
      if (is_unstable(p.slot) == unstable) by_saddle[p.saddle].push_back(&p);
    struct Edge {
      PointId a, b;
      TorusKnotClass g;
    };
    std::vector<Edge> edges;
    for (const auto& [s, v] : by_saddle) {
      const PointSeparatrix* e1 = v[0]->slot < v[1]->slot ? v[0] : v[1];
      const PointSeparatrix* e2 = e1 == v[0] ? v[1] : v[0];
      PointId a = rename(e1->target), b = rename(e2->target);
      TorusKnotClass g = e2->gain - e1->gain;
      if (a == b) {
        closures[rename(s)] = up_to_sign(g);
        continue;
      }
      closures[rename(s)] = std::nullopt;
      if (b < a) {
        std::swap(a, b);
        g = -g;
      }
      edges.push_back({a, b, g});
    }
    for (size_t i = 0; i < edges.size(); ++i)
      for (size_t j = i + 1; j < edges.size(); ++j)
        if (edges[i].a == edges[j].a && edges[i].b == edges[j].b)
          cycles[{edges[i].a, edges[i].b}].push_back(up_to_sign(edges[i].g - edges[j].g));
    for (auto& [k, v] : cycles) std::sort(v.begin(), v.end());
  }

  bool final_check() const {
    if (x.matrix != y.matrix) return false;
    auto py = expand_points(y);
    for (bool unstable : {true, false}) {
      std::map<PointId, std::optional<TorusKnotClass>> cx, cy;
      Signature gx, gy;
      collect(px, unstable, [this](PointId p) { return image(p); }, cx, gx);
      collect(py, unstable, [](PointId p) { return p; }, cy, gy);
      if (cx != cy || gx != gy) return false;
    }
    return true;
  }
};

}  // namespace

bool descriptors_isomorphic(const DiffeoDescriptor& x, const DiffeoDescriptor& y) {
  if (x.orbits.size() != y.orbits.size() || !(counts(x) == counts(y))) return false;
  IsoSearch s{x, y, expand_points(x), {}, {}, {}, x.ids_of(OrbitKind::Saddle)};
  if (s.saddles_x.size() != y.ids_of(OrbitKind::Saddle).size()) return false;
  return s.search(0);
}

}  // namespace a2t
