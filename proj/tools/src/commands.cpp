#include "commands.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "a2torus/constraints.hpp"
#include "a2torus/descriptor.hpp"
#include "a2torus/errors.hpp"
#include "a2torus/homotopy.hpp"
#include "a2torus/surgery.hpp"
#include "a2torus/tricolor.hpp"

namespace a2t::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("IoError", "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("IoError", "cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::vector<std::int64_t> parse_ints(const std::string& s, size_t count, const std::string& what) {
  std::vector<std::int64_t> v;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw DomainError("UsageError", what + " must be " + std::to_string(count) + " comma-separated integers");
    }
  }
  if (v.size() != count)
    throw DomainError("UsageError", what + " must be " + std::to_string(count) + " comma-separated integers");
  return v;
}

UniModularMatrix parse_matrix(const std::string& s) {
  auto e = parse_ints(s, 4, "matrix entries");
  return make_matrix(e[0], e[1], e[2], e[3]);
}

Json matrix_json(const UniModularMatrix& m) { return Json::array({m.m00, m.m01, m.m10, m.m11}); }
Json knot_json(const TorusKnotClass& k) { return Json::array({k.a, k.b}); }
Json vec_json(Vec2 p) { return Json::array({p.x, p.y}); }

Json envelope() {
  Json j;
  j["schema"] = "1";
  return j;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

int classify_matrix(const RunConfig& cfg, std::ostream& out) {
  auto m = parse_matrix(cfg.entries);
  auto c = classify(m, parse_policy(cfg.policy), cfg.bound);
  Json j = envelope();
  j["class"] = class_name(c.tag);
  j["conjugator"] = c.conjugator ? matrix_json(*c.conjugator) : Json(nullptr);
  emit(out, j);
  return 0;
}

int knot_orbit(const RunConfig& cfg, std::ostream& out) {
  auto e = parse_ints(cfg.knot_class, 2, "class");
  Json j = envelope();
  j["orbit"] = Json::array();
  for (const auto& k : orbit3({e[0], e[1]})) j["orbit"].push_back(knot_json(k));
  emit(out, j);
  return 0;
}

int diophantine(const RunConfig& cfg, std::ostream& out) {
  Json j = envelope();
  j["epsilon"] = cfg.epsilon;
  j["solutions"] = Json::array();
  for (const auto& k : diophantine_solutions(cfg.epsilon)) j["solutions"].push_back(knot_json(k));
  emit(out, j);
  return 0;
}

int check_counts(const RunConfig& cfg, std::ostream& out) {
  auto v = check_lefschetz_hopf({cfg.c0, cfg.c1, cfg.c2});
  Json j = envelope();
  j["counts"] = Json::array({cfg.c0, cfg.c1, cfg.c2});
  j["pass"] = v.pass;
  j["violated"] = v.violated;
  j["message"] = v.message;
  emit(out, j);
  return v.pass ? 0 : 1;
}

Json descriptor_json(const DiffeoDescriptor& d) { return Json::parse(descriptor_to_json(d)); }

int component(const RunConfig& cfg, std::ostream& out) {
  auto d = descriptor_from_json(read_file(cfg.descriptor_in));
  auto v = validate_G2(d);
  if (!v.pass) throw DomainError("InvalidDescriptor", "descriptor fails " + v.clause);
  auto c = counts(d);
  Json j = envelope();
  j["component"] = component_id(d);
  j["counts"] = Json::array({c.c0, c.c1, c.c2});
  emit(out, j);
  return 0;
}

int graph_eq(const RunConfig& cfg, std::ostream& out) {
  auto g = build_tricolor(cells_from_json(read_file(cfg.left)));
  auto h = build_tricolor(cells_from_json(read_file(cfg.right)));
  auto w = tricolor_equivalent(g, h);
  Json j = envelope();
  j["equivalent"] = w.has_value();
  j["vertices"] = Json::array({g.size(), h.size()});
  if (w) {
    Json m = Json::object();
    for (int v = 0; v < g.size(); ++v) m[g.labels[v]] = h.labels[(*w)[v]];
    j["witness"] = m;
  } else {
    j["witness"] = nullptr;
  }
  emit(out, j);
  return 0;
}

int reduce(const RunConfig& cfg, std::ostream& out) {
  auto d = descriptor_from_json(read_file(cfg.descriptor_in));
  Reduction r;
  if (!cfg.replay_in.empty()) {
    r.moves = moves_from_json(read_file(cfg.replay_in));
    r.result = apply_moves(d, r.moves);
  } else {
    r = reduce_to_simplest(d);
  }
  if (!cfg.trace_out.empty()) write_file(cfg.trace_out, moves_to_json(r.moves));
  auto c = counts(r.result);
  Json j = envelope();
  j["component"] = component_id(r.result);
  j["counts"] = Json::array({c.c0, c.c1, c.c2});
  j["canonical"] = descriptors_isomorphic(r.result, canonical_descriptor(component_id(r.result)));
  j["moves"] = Json::parse(moves_to_json(r.moves))["moves"];
  j["result"] = descriptor_json(r.result);
  emit(out, j);
  return 0;
}

ExtractConfig extract_config(const RunConfig& cfg) {
  ExtractConfig e = cfg.extract;
  if (cfg.seed != 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    double x = u(rng);
    e.search.grid_offset = {x, u(rng)};
  }
  return e;
}

Json census_json(const std::vector<PeriodicPointRecord>& census) {
  Json a = Json::array();
  for (const auto& p : census) {
    Json r;
    r["location"] = vec_json(p.location);
    r["period"] = p.period;
    r["kind"] = kind_name(p.kind);
    r["eigenvalues"] = Json::array();
    for (const auto& v : p.eigen.values) r["eigenvalues"].push_back(Json::array({v.real(), v.imag()}));
    a.push_back(r);
  }
  return a;
}

Json rotations_json(const ModelMap& m, const std::vector<PeriodicPointRecord>& census, const ExtractConfig& e) {
  Json a = Json::array();
  for (int c = 0; c < static_cast<int>(census.size()); ++c) {
    if (census[c].kind != OrbitKind::Sink || census[c].period != 1) continue;
    auto r = rotation_number_of_sink(m, census, c, e);
    Json s;
    s["sink"] = vec_json(census[c].location);
    s["rotation"] = std::to_string(r.numerator) + "/" + std::to_string(r.denominator);
    s["no_separatrix"] = r.no_separatrix;
    a.push_back(s);
  }
  return a;
}

int simulate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.direction != 1 && cfg.direction != -1) throw DomainError("UsageError", "direction must be +1 or -1");
  ExtractConfig e = extract_config(cfg);
  Json j = envelope();
  j["potential"] = cfg.potential;

  ModelMap m;
  m.direction = cfg.direction;
  m.matrix = parse_matrix(cfg.matrix);
  m.integrator.step = cfg.step;
  std::optional<Extraction> ex;
  if (cfg.potential == "g0-search") {
    if (cfg.direction != -1) throw DomainError("UsageError", "g0-search runs the downhill flow; use --direction -1");
    if (m.matrix != a2_matrix()) throw DomainError("UsageError", "g0-search requires the default matrix");
    auto s = search_g0(e);
    Json log = Json::array();
    for (const auto& l : s.log)
      log.push_back({{"height", l.at.height},
                     {"width", l.at.width},
                     {"screened", l.screened},
                     {"certified", l.certified},
                     {"reason", l.reason}});
    j["scan"] = log;
    if (!s.found) {
      emit(out, j);
      throw DomainError("SearchFailed", "no grid point produced a certified g0 model");
    }
    j["found"] = {{"height", s.found->height}, {"width", s.found->width}};
    m = *s.model;
    ex = std::move(s.extraction);
  } else {
    m.potential = cfg.potential == "std" ? standard_potential() : potential_from_json(read_file(cfg.potential));
  }
  j["direction"] = m.direction;
  j["matrix"] = matrix_json(m.matrix);

  if (m.matrix != a2_matrix()) {
    auto s = find_periodic_points(m, 3, e.search);
    j["census"] = census_json(s.points);
    j["diverged"] = s.diverged;
    j["rotation_numbers"] = rotations_json(m, s.points, e);
    emit(out, j);
    return 0;
  }

  if (!ex) ex = extract_descriptor(m, e);
  auto c = counts(ex->descriptor);
  j["census"] = census_json(ex->census);
  j["diverged"] = ex->diverged;
  j["counts"] = Json::array({c.c0, c.c1, c.c2});
  j["component"] = component_id(ex->descriptor);
  j["rotation_numbers"] = rotations_json(m, ex->census, e);
  Json closures = Json::array();
  for (const auto& k : ex->descriptor.closures)
    closures.push_back({{"saddle", k.saddle}, {"knot", k.knot ? knot_json(*k.knot) : Json(nullptr)}});
  j["closures"] = closures;

  if (!cfg.descriptor_out.empty()) write_file(cfg.descriptor_out, descriptor_to_json(ex->descriptor));
  if (!cfg.cells_out.empty()) write_file(cfg.cells_out, cells_to_json(ex->cells));
  if (!cfg.portrait_out.empty()) write_file(cfg.portrait_out, portrait_to_json(ex->portrait));
  if (!cfg.render_out.empty()) render_phase_portrait(ex->portrait, cfg.render_out, cfg.render);
  emit(out, j);
  return 0;
}

int render(const RunConfig& cfg, std::ostream& out) {
  auto p = portrait_from_json(read_file(cfg.portrait_in));
  render_phase_portrait(p, cfg.out, cfg.render);
  Json j = envelope();
  j["svg"] = cfg.out;
  j["nodes"] = p.nodes.size();
  j["separatrices"] = p.separatrices.size();
  emit(out, j);
  return 0;
}

}  // namespace

int dispatch(const RunConfig& cfg, std::ostream& out) {
  const std::string& s = cfg.subcommand;
  if (s == "classify-matrix") return classify_matrix(cfg, out);
  if (s == "knot-orbit") return knot_orbit(cfg, out);
  if (s == "diophantine") return diophantine(cfg, out);
  if (s == "check-counts") return check_counts(cfg, out);
  if (s == "component") return component(cfg, out);
  if (s == "graph-eq") return graph_eq(cfg, out);
  if (s == "reduce") return reduce(cfg, out);
  if (s == "simulate") return simulate(cfg, out);
  if (s == "render") return render(cfg, out);
  throw DomainError("UsageError", "unknown subcommand " + s);
}

}  // namespace a2t::cli
