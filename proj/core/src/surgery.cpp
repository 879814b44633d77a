#include "a2torus/surgery.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>

#include "a2torus/errors.hpp"

namespace a2t {

namespace {

[[noreturn]] void violated(const std::string& clause) {
  throw DomainError("PreconditionViolated", clause);
}

OrbitKind opposite(OrbitKind k) { return k == OrbitKind::Sink ? OrbitKind::Source : OrbitKind::Sink; }

bool side_type(Slot s, OrbitKind side) {
  return side == OrbitKind::Sink ? is_unstable(s) : !is_unstable(s);
}

Slot partner(Slot s) {
  switch (s) {
    case Slot::U1: return Slot::U2;
    case Slot::U2: return Slot::U1;
    case Slot::S1: return Slot::S2;
    case Slot::S2: return Slot::S1;
  }
  return s;
}

Slot flip_type(Slot s) {
  switch (s) {
    case Slot::U1: return Slot::S1;
    case Slot::U2: return Slot::S2;
    case Slot::S1: return Slot::U1;
    case Slot::S2: return Slot::U2;
  }
  return s;
}

std::string id_str(int id) { return std::to_string(id); }

// Keeps the phase-0 records of surviving saddles.
DiffeoDescriptor rebuild(const DiffeoDescriptor& d, const std::set<int>& drop,
                         const std::vector<PointSeparatrix>& pts) {
  DiffeoDescriptor r;
  r.matrix = d.matrix;
  for (const auto& o : d.orbits)
    if (!drop.count(o.id)) r.orbits.push_back(o);
  for (const auto& p : pts) {
    if (p.saddle.phase != 0 || drop.count(p.saddle.orbit)) continue;
    if (drop.count(p.target.orbit))
      violated("separatrix of saddle " + id_str(p.saddle.orbit) + " would lose its target");
    r.separatrices.push_back({p.saddle.orbit, p.slot, p.target.orbit, p.target.phase, p.gain});
  }
  normalize(r);
  return r;
}

const PointSeparatrix& find_sep(const std::vector<PointSeparatrix>& pts, PointId saddle, Slot slot) {
  for (const auto& p : pts)
    if (p.saddle == saddle && p.slot == slot) return p;
  violated("missing separatrix");
}

// Two saddle points whose closures of the given type share endpoints and bound a
// contractible cycle.
bool parallel_contractible(const std::vector<PointSeparatrix>& pts, PointId p, PointId q,
                           bool unstable) {
  Slot a1 = unstable ? Slot::U1 : Slot::S1, a2 = unstable ? Slot::U2 : Slot::S2;
  const auto& p1 = find_sep(pts, p, a1);
  const auto& p2 = find_sep(pts, p, a2);
  const auto& q1 = find_sep(pts, q, a1);
  const auto& q2 = find_sep(pts, q, a2);
  TorusKnotClass gp = p2.gain - p1.gain, gq = q2.gain - q1.gain;
  if (p1.target == q1.target && p2.target == q2.target && (gp - gq).contractible()) return true;
  if (p1.target == q2.target && p2.target == q1.target && (gp + gq).contractible()) return true;
  return false;
}

DiffeoDescriptor collapse_disk(const DiffeoDescriptor& d, const Move& m) {
  if (m.side == OrbitKind::Saddle) violated("side must be sink or source");
  if (!d.has_orbit(m.kept)) violated("kept orbit " + id_str(m.kept) + " does not exist");
  const auto& kept = d.orbit(m.kept);
  if (kept.kind != m.side) violated("kept orbit is not a " + kind_name(m.side));
  if (m.removed.empty()) violated("no orbits to remove");
  std::set<int> removed;
  for (int id : m.removed) {
    if (!d.has_orbit(id)) violated("removed orbit " + id_str(id) + " does not exist");
    if (id == m.kept) violated("kept orbit listed as removed");
    if (d.orbit(id).period != 3) violated("removed orbit " + id_str(id) + " is not of period 3");
    if (!removed.insert(id).second) violated("removed orbit listed twice");
  }
  std::set<int> region = removed;
  region.insert(m.kept);
  auto pts = expand_points(d);

  for (const auto& p : pts) {
    bool inside_saddle = region.count(p.saddle.orbit) > 0;
    bool inside_target = region.count(p.target.orbit) > 0;
    if (inside_saddle && side_type(p.slot, m.side) && !inside_target)
      violated("separatrix of region saddle " + id_str(p.saddle.orbit) + " leaves the disk");
    if (!inside_saddle && removed.count(p.target.orbit) &&
        d.orbit(p.target.orbit).kind != m.side)
      violated("node " + id_str(p.target.orbit) + " inside the disk is reached from outside");
  }

  std::map<PointId, std::vector<std::pair<PointId, TorusKnotClass>>> adj;
  for (int id : region)
    for (int k = 0; k < d.orbit(id).period; ++k) adj[{id, k}];
  for (const auto& p : pts) {
    if (!region.count(p.saddle.orbit) || !region.count(p.target.orbit)) continue;
    adj[p.saddle].push_back({p.target, p.gain});
    adj[p.target].push_back({p.saddle, -p.gain});
  }
  std::map<PointId, int> comp;
  std::map<PointId, TorusKnotClass> pot;
  std::vector<PointId> kept_point;
  int ncomp = 0;
  for (const auto& [start, unused] : adj) {
    if (comp.count(start)) continue;
    int c = ncomp++;
    int nodes = 0, saddles = 0, kept_here = 0;
    PointId kp{};
    std::queue<PointId> q;
    q.push(start);
    comp[start] = c;
    pot[start] = {};
    while (!q.empty()) {
      PointId v = q.front();
      q.pop();
      if (d.orbit(v.orbit).kind == OrbitKind::Saddle)
        ++saddles;
      else
        ++nodes;
      if (v.orbit == m.kept) {
        ++kept_here;
        kp = v;
      }
      for (const auto& [w, g] : adj[v]) {
        auto want = pot[v] + g;
        if (comp.count(w)) {
          if (pot[w] != want) violated("a cycle inside the disk is not contractible");
          continue;
        }
        comp[w] = c;
        pot[w] = want;
        q.push(w);
      }
    }
    if (kept_here != 1)
      violated("a disk component holds " + std::to_string(kept_here) + " points of the kept orbit");
    if (nodes - saddles != 1) violated("a disk component has Euler characteristic != 1");
    kept_point.push_back(kp);
  }
  if (ncomp != kept.period) violated("number of disks differs from the kept period");

  std::vector<PointSeparatrix> out;
  for (auto p : pts) {
    if (region.count(p.saddle.orbit)) continue;
    if (removed.count(p.target.orbit)) {
      PointId k = kept_point[comp[p.target]];
      p.gain = p.gain + pot[k] - pot[p.target];
      p.target = k;
    }
    out.push_back(p);
  }
  return rebuild(d, removed, out);
}

DiffeoDescriptor confluence(const DiffeoDescriptor& d, const Move& m) {
  if (!d.has_orbit(m.node)) violated("node orbit " + id_str(m.node) + " does not exist");
  const auto& node = d.orbit(m.node);
  if (node.kind != m.side) violated("node orbit is not a " + kind_name(m.side));
  if (node.period != 3) violated("only period-3 nodes can be merged away");
  auto pts = expand_points(d);
  bool unstable = m.side == OrbitKind::Sink;

  std::map<std::pair<PointId, Slot>, PointSeparatrix> replace;
  int keep_orbit = -1, drop_orbit = -1;
  for (int j = 0; j < node.period; ++j) {
    std::vector<PointSeparatrix> in;
    for (const auto& p : pts)
      if (p.target == PointId{m.node, j}) in.push_back(p);
    if (in.size() != 2) violated("node point is not of degree 2");
    if (in[0].saddle.orbit == in[1].saddle.orbit)
      violated("both separatrices at the node belong to one saddle orbit");
    if (!parallel_contractible(pts, in[0].saddle, in[1].saddle, !unstable))
      violated("the two saddles do not cobound an annulus");
    if (in[1].saddle.orbit < in[0].saddle.orbit) std::swap(in[0], in[1]);
    if (j > 0 && (keep_orbit != in[0].saddle.orbit || drop_orbit != in[1].saddle.orbit))
      violated("node points are reached from different saddle orbits");
    keep_orbit = in[0].saddle.orbit;
    drop_orbit = in[1].saddle.orbit;
    const auto& a = in[0];
    const auto& b = in[1];
    const auto& other = find_sep(pts, b.saddle, partner(b.slot));
    if (other.target.orbit == m.node) violated("merged separatrix would end at the removed node");
    PointSeparatrix r = a;
    r.target = other.target;
    r.gain = other.gain + a.gain - b.gain;
    replace[{a.saddle, a.slot}] = r;
  }
  std::vector<PointSeparatrix> out;
  for (const auto& p : pts) {
    if (p.saddle.orbit == drop_orbit) continue;
    auto it = replace.find({p.saddle, p.slot});
    out.push_back(it == replace.end() ? p : it->second);
  }
  return rebuild(d, {drop_orbit, m.node}, out);
}

DiffeoDescriptor expansion(const DiffeoDescriptor& d, const Move& m) {
  if (m.side == OrbitKind::Saddle) violated("side must be sink or source");
  if (!d.has_orbit(m.saddle) || d.orbit(m.saddle).kind != OrbitKind::Saddle)
    violated("expansion needs an existing saddle orbit");
  if (is_unstable(m.stable_slot) || !is_unstable(m.unstable_slot))
    violated("quadrant needs one stable and one unstable slot");
  int t = m.new_saddle >= 0 ? m.new_saddle : d.next_id();
  int n = m.new_node >= 0 ? m.new_node : std::max(d.next_id(), t + 1);
  if (t == n || d.has_orbit(t) || d.has_orbit(n)) violated("new orbit ids collide");

  DiffeoDescriptor r = d;
  r.orbits.push_back({t, OrbitKind::Saddle, 3, Orientation::Positive, {}});
  r.orbits.push_back({n, m.side, 3, Orientation::Positive, {}});
  const auto s = d.separatrix(m.saddle, m.stable_slot);
  const auto u = d.separatrix(m.saddle, m.unstable_slot);
  auto copy = [&](Slot slot, const SeparatrixRecord& from) {
    r.separatrices.push_back({t, slot, from.target, from.phase, from.deck});
  };
  auto fresh = [&](Slot slot) { r.separatrices.push_back({t, slot, n, 0, {}}); };

  if (m.kind == MoveKind::ExpandDisk) {
    if (m.side == OrbitKind::Sink) {
      copy(Slot::U1, u);
      fresh(Slot::U2);
      copy(Slot::S1, s);
      copy(Slot::S2, s);
    } else {
      copy(Slot::S1, s);
      fresh(Slot::S2);
      copy(Slot::U1, u);
      copy(Slot::U2, u);
    }
  } else {
    if (m.side == OrbitKind::Source) {
      auto& moved = r.separatrix(m.saddle, m.stable_slot);
      moved.target = n;
      moved.phase = 0;
      moved.deck = {};
      fresh(Slot::S1);
      copy(Slot::S2, s);
      copy(Slot::U1, d.separatrix(m.saddle, Slot::U1));
      copy(Slot::U2, d.separatrix(m.saddle, Slot::U2));
    } else {
      auto& moved = r.separatrix(m.saddle, m.unstable_slot);
      moved.target = n;
      moved.phase = 0;
      moved.deck = {};
      fresh(Slot::U1);
      copy(Slot::U2, u);
      copy(Slot::S1, d.separatrix(m.saddle, Slot::S1));
      copy(Slot::S2, d.separatrix(m.saddle, Slot::S2));
    }
  }
  normalize(r);
  return r;
}

}  // namespace

std::string move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::CollapseDisk: return "collapse-disk";
    case MoveKind::ConfluenceAnnulus: return "confluence-annulus";
    case MoveKind::ExpandDisk: return "expand-disk";
    case MoveKind::ExpandAnnulus: return "expand-annulus";
  }
  return "?";
}

MoveKind parse_move_kind(const std::string& s) {
  if (s == "collapse-disk") return MoveKind::CollapseDisk;
  if (s == "confluence-annulus") return MoveKind::ConfluenceAnnulus;
  if (s == "expand-disk") return MoveKind::ExpandDisk;
  if (s == "expand-annulus") return MoveKind::ExpandAnnulus;
  throw DomainError("MalformedMove", "unknown move kind " + s);
}

Move mirror(const Move& m) {
  Move r = m;
  r.side = opposite(m.side);
  r.stable_slot = flip_type(m.unstable_slot);
  r.unstable_slot = flip_type(m.stable_slot);
  return r;
}

DiffeoDescriptor apply_move(const DiffeoDescriptor& d, const Move& m) {
  switch (m.kind) {
    case MoveKind::CollapseDisk: return collapse_disk(d, m);
    case MoveKind::ConfluenceAnnulus: return confluence(d, m);
    case MoveKind::ExpandDisk:
    case MoveKind::ExpandAnnulus: return expansion(d, m);
  }
  violated("unknown move");
}

DiffeoDescriptor apply_moves(DiffeoDescriptor d, const std::vector<Move>& moves) {
  for (const auto& m : moves) d = apply_move(d, m);
  return d;
}

Move random_expansion(const DiffeoDescriptor& d, MoveKind kind, std::uint64_t seed) {
  if (kind != MoveKind::ExpandDisk && kind != MoveKind::ExpandAnnulus)
    throw DomainError("BadMoveKind", "expansion kind must be expand-disk or expand-annulus");
  std::mt19937_64 rng(seed);
  auto saddles = d.ids_of(OrbitKind::Saddle);
  if (saddles.empty()) throw DomainError("InvalidDescriptor", "no saddle orbit to expand at");
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  Move m;
  m.kind = kind;
  m.saddle = saddles[pick(static_cast<int>(saddles.size()))];
  m.stable_slot = pick(2) == 0 ? Slot::S1 : Slot::S2;
  m.unstable_slot = pick(2) == 0 ? Slot::U1 : Slot::U2;
  bool coin = pick(2) == 0;
  if (kind == MoveKind::ExpandDisk) {
    m.side = coin ? OrbitKind::Sink : OrbitKind::Source;
  } else {
    int fixed_sinks = 0;
    for (const auto& o : d.orbits)
      if (o.kind == OrbitKind::Sink && o.period == 1) ++fixed_sinks;
    // Essential closures are unstable for components 0 and 1, stable for 2 and 3.
    m.side = fixed_sinks <= 1 ? OrbitKind::Source : OrbitKind::Sink;
  }
  m.new_saddle = d.next_id();
  m.new_node = m.new_saddle + 1;
  return m;
}

DiffeoDescriptor expand(const DiffeoDescriptor& d, MoveKind kind, std::uint64_t seed) {
  return apply_move(d, random_expansion(d, kind, seed));
}

namespace {

struct Reducer {
  int component;
  DiffeoDescriptor d;
  std::vector<Move> moves;

  bool attempt(const std::vector<Move>& batch) {
    DiffeoDescriptor cur = d;
    try {
      for (const auto& m : batch) cur = apply_move(cur, m);
    } catch (const DomainError& e) {
      if (e.code() != "PreconditionViolated") throw;
      return false;
    }
    d = cur;
    moves.insert(moves.end(), batch.begin(), batch.end());
    return true;
  }

  // Components of the point graph once the given orbits are cut away.
  std::vector<std::set<PointId>> components(const std::set<int>& cut) const {
    auto pts = expand_points(d);
    std::map<PointId, std::vector<PointId>> adj;
    for (const auto& o : d.orbits)
      if (!cut.count(o.id))
        for (int k = 0; k < o.period; ++k) adj[{o.id, k}];
    for (const auto& p : pts) {
      if (cut.count(p.saddle.orbit) || cut.count(p.target.orbit)) continue;
      adj[p.saddle].push_back(p.target);
      adj[p.target].push_back(p.saddle);
    }
    std::vector<std::set<PointId>> out;
    std::set<PointId> seen;
    for (const auto& [s, unused] : adj) {
      if (seen.count(s)) continue;
      std::set<PointId> c;
      std::vector<PointId> stack{s};
      seen.insert(s);
      while (!stack.empty()) {
        auto v = stack.back();
        stack.pop_back();
        c.insert(v);
        for (const auto& w : adj[v])
          if (seen.insert(w).second) stack.push_back(w);
      }
      out.push_back(c);
    }
    return out;
  }

  static std::set<int> orbits_of(const std::set<PointId>& c) {
    std::set<int> r;
    for (const auto& p : c) r.insert(p.orbit);
    return r;
  }

  std::vector<int> fixed_in(const std::set<int>& orbits, OrbitKind kind) const {
    std::vector<int> r;
    for (int id : orbits)
      if (d.orbit(id).period == 1 && d.orbit(id).kind == kind) r.push_back(id);
    return r;
  }

  // Cut along an essential graph; every complementary piece must hold exactly one fixed
  // source and is collapsed onto it.
  std::optional<std::vector<Move>> split_collapse(const std::set<int>& cut) const {
    std::vector<Move> batch;
    for (const auto& c : components(cut)) {
      auto orbs = orbits_of(c);
      auto sources = fixed_in(orbs, OrbitKind::Source);
      if (sources.size() != 1) return std::nullopt;
      orbs.erase(sources[0]);
      if (orbs.empty()) continue;
      Move m;
      m.kind = MoveKind::CollapseDisk;
      m.side = OrbitKind::Source;
      m.kept = sources[0];
      m.removed.assign(orbs.begin(), orbs.end());
      batch.push_back(m);
    }
    return batch;
  }

  // Orbits inside a contractible loop: pieces without fixed points once the loop is cut.
  std::optional<Move> loop_collapse(int saddle, int sink) const {
    std::set<int> region;
    for (const auto& c : components({saddle, sink})) {
      auto orbs = orbits_of(c);
      bool has_fixed = std::any_of(orbs.begin(), orbs.end(),
                                   [&](int id) { return d.orbit(id).period == 1; });
      if (!has_fixed) region.insert(orbs.begin(), orbs.end());
    }
    region.insert(saddle);
    Move m;
    m.kind = MoveKind::CollapseDisk;
    m.side = OrbitKind::Sink;
    m.kept = sink;
    m.removed.assign(region.begin(), region.end());
    return m;
  }

  struct Edge {
    PointId saddle, a, b;
    TorusKnotClass gain;
  };

  std::vector<Edge> unstable_edges() const {
    auto pts = expand_points(d);
    std::vector<Edge> out;
    for (const auto& o : d.orbits) {
      if (o.kind != OrbitKind::Saddle) continue;
      for (int k = 0; k < o.period; ++k) {
        const auto& u1 = find_sep(pts, {o.id, k}, Slot::U1);
        const auto& u2 = find_sep(pts, {o.id, k}, Slot::U2);
        out.push_back({{o.id, k}, u1.target, u2.target, u2.gain - u1.gain});
      }
    }
    return out;
  }

  bool generic_step() {
    for (int t : d.ids_of(OrbitKind::Saddle)) {
      for (OrbitKind side : {OrbitKind::Sink, OrbitKind::Source}) {
        Slot a = side == OrbitKind::Sink ? Slot::U1 : Slot::S1;
        Slot b = side == OrbitKind::Sink ? Slot::U2 : Slot::S2;
        for (auto [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
          int nu = d.separatrix(t, x).target, kappa = d.separatrix(t, y).target;
          if (nu == kappa || d.orbit(nu).period != 3) continue;
          Move m;
          m.kind = MoveKind::CollapseDisk;
          m.side = side;
          m.kept = kappa;
          m.removed = {std::min(t, nu), std::max(t, nu)};
          if (attempt({m})) return true;
        }
      }
    }
    for (const auto& o : d.orbits) {
      if (o.kind == OrbitKind::Saddle || o.period != 3) continue;
      Move m;
      m.kind = MoveKind::ConfluenceAnnulus;
      m.side = o.kind;
      m.node = o.id;
      if (attempt({m})) return true;
    }
    return false;
  }

  bool step_one_fixed_sink() {
    auto sinks = d.ids_of(OrbitKind::Sink);
    int omega = fixed_in({sinks.begin(), sinks.end()}, OrbitKind::Sink).at(0);
    auto edges = unstable_edges();
    // Case 1: a non-contractible loop at omega made of one saddle.
    for (const auto& e : edges) {
      if (e.saddle.phase != 0 || e.a.orbit != omega || e.b.orbit != omega) continue;
      if (e.gain.contractible()) continue;
      auto batch = split_collapse({omega, e.saddle.orbit});
      if (batch && !batch->empty() && attempt(*batch)) return true;
    }
    // Case 1 with a loop through two saddles and a second sink point.
    for (size_t i = 0; i < edges.size(); ++i)
      for (size_t j = i + 1; j < edges.size(); ++j) {
        const auto& e = edges[i];
        const auto& f = edges[j];
        if (e.saddle.orbit == f.saddle.orbit) continue;
        PointId w{omega, 0};
        PointId other = e.a == w ? e.b : e.a;
        if (other == w || other.orbit == omega) continue;
        if (!((e.a == w || e.b == w) && ((f.a == w && f.b == other) || (f.b == w && f.a == other))))
          continue;
        TorusKnotClass ge = e.a == w ? e.gain : -e.gain;
        TorusKnotClass gf = f.a == w ? f.gain : -f.gain;
        if ((ge - gf).contractible()) continue;
        auto batch = split_collapse({omega, other.orbit, e.saddle.orbit, f.saddle.orbit});
        if (batch && !batch->empty() && attempt(*batch)) return true;
        Move m;
        m.kind = MoveKind::ConfluenceAnnulus;
        m.side = OrbitKind::Sink;
        m.node = other.orbit;
        if (d.orbit(other.orbit).period == 3 && attempt({m})) return true;
      }
    // Case 2a: a contractible loop at omega.
    for (const auto& e : edges) {
      if (e.saddle.phase != 0 || e.a.orbit != omega || e.b.orbit != omega) continue;
      if (!e.gain.contractible()) continue;
      if (auto m = loop_collapse(e.saddle.orbit, omega); m && attempt({*m})) return true;
    }
    // Case 2b: the saddles at omega form a tree; collapse it into omega.
    {
      std::set<int> region;
      for (const auto& e : edges) {
        if (e.a.orbit != omega && e.b.orbit != omega) continue;
        region.insert(e.saddle.orbit);
        if (e.a.orbit != omega) region.insert(e.a.orbit);
        if (e.b.orbit != omega) region.insert(e.b.orbit);
      }
      if (!region.empty()) {
        Move m;
        m.kind = MoveKind::CollapseDisk;
        m.side = OrbitKind::Sink;
        m.kept = omega;
        m.removed.assign(region.begin(), region.end());
        if (attempt({m})) return true;
      }
    }
    return generic_step();
  }

  bool step_no_fixed_sink() {
    auto edges = unstable_edges();
    // Saddles joining two different sink orbits.
    for (const auto& e : edges) {
      if (e.saddle.phase != 0 || e.a.orbit == e.b.orbit) continue;
      Move m;
      m.kind = MoveKind::CollapseDisk;
      m.side = OrbitKind::Sink;
      m.kept = std::min(e.a.orbit, e.b.orbit);
      m.removed = {e.saddle.orbit, std::max(e.a.orbit, e.b.orbit)};
      std::sort(m.removed.begin(), m.removed.end());
      if (attempt({m})) return true;
    }
    // Contractible single-point loops with their interior.
    for (const auto& e : edges) {
      if (e.saddle.phase != 0 || e.a != e.b || !e.gain.contractible()) continue;
      if (auto m = loop_collapse(e.saddle.orbit, e.a.orbit); m && attempt({*m})) return true;
    }
    // Contractible two-edge cycles around a degree-2 source.
    for (const auto& o : d.orbits) {
      if (o.kind != OrbitKind::Source || o.period != 3) continue;
      Move m;
      m.kind = MoveKind::ConfluenceAnnulus;
      m.side = OrbitKind::Source;
      m.node = o.id;
      if (attempt({m})) return true;
    }
    // A non-contractible two-edge cycle: cut along its orbit and collapse the three disks.
    for (size_t i = 0; i < edges.size(); ++i)
      for (size_t j = i + 1; j < edges.size(); ++j) {
        const auto& e = edges[i];
        const auto& f = edges[j];
        if (e.saddle.orbit == f.saddle.orbit || e.a == e.b) continue;
        TorusKnotClass c;
        if (e.a == f.a && e.b == f.b)
          c = e.gain - f.gain;
        else if (e.a == f.b && e.b == f.a)
          c = e.gain + f.gain;
        else
          continue;
        if (c.contractible()) continue;
        auto batch = split_collapse({e.a.orbit, e.b.orbit, e.saddle.orbit, f.saddle.orbit});
        if (batch && !batch->empty() && attempt(*batch)) return true;
      }
    return generic_step();
  }

  void run() {
    auto target = canonical_descriptor(component);
    for (int guard = 0; guard < 10000; ++guard) {
      if (counts(d) == counts(target)) {
        if (descriptors_isomorphic(d, target)) return;
        break;
      }
      bool moved = component == 1 ? step_one_fixed_sink() : step_no_fixed_sink();
      if (!moved) break;
    }
    throw DomainError("StuckDescriptor", "no reduction move applies to a non-simplest descriptor");
  }
};

}  // namespace

Reduction reduce_to_simplest(const DiffeoDescriptor& d) {
  int i = component_id(d);
  bool flip = i >= 2;
  Reducer r{flip ? 3 - i : i, flip ? mirror(d) : d, {}};
  r.run();
  Reduction out;
  out.result = flip ? mirror(r.d) : r.d;
  for (const auto& m : r.moves) out.moves.push_back(flip ? mirror(m) : m);
  return out;
}

}  // namespace a2t
