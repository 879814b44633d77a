#include "a2torus/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "a2torus/errors.hpp"

namespace a2t {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Invariant metric of the A2 action and its scaled inverse, the flow's mobility.
constexpr Mat2 kMetric{2, -1, -1, 2};
const Mat2 kMobility{2 / (12 * std::numbers::pi * std::numbers::pi),
                     1 / (12 * std::numbers::pi * std::numbers::pi),
                     1 / (12 * std::numbers::pi * std::numbers::pi),
                     2 / (12 * std::numbers::pi * std::numbers::pi)};

double metric_norm(Vec2 d) { return std::sqrt(dot(d, kMetric * d)); }

Mat2 outer(Vec2 u, Vec2 v) { return {u.x * v.x, u.x * v.y, u.y * v.x, u.y * v.y}; }

Mat2 transpose_matrix(const UniModularMatrix& m) {
  return {static_cast<double>(m.m00), static_cast<double>(m.m10), static_cast<double>(m.m01),
          static_cast<double>(m.m11)};
}

Vec2 solve(const Mat2& m, Vec2 r) {
  double det = m.a * m.d - m.b * m.c;
  if (det == 0) return {};
  return {(m.d * r.x - m.b * r.y) / det, (-m.c * r.x + m.a * r.y) / det};
}

double angle_of(Vec2 d) { return std::atan2(d.y, d.x); }

bool lex_less(Vec2 a, Vec2 b) {
  if (std::abs(a.x - b.x) > 1e-9) return a.x < b.x;
  if (std::abs(a.y - b.y) > 1e-9) return a.y < b.y;
  return false;
}

// A bump in the invariant metric; visits every lattice translate within reach.
template <typename F>
void for_each_bump_image(const Bump& b, Vec2 p, F&& f) {
  Vec2 d0 = min_image(p - b.center);
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) {
      Vec2 d = d0 + Vec2{static_cast<double>(i), static_cast<double>(j)};
      double s = dot(d, kMetric * d) / (b.width * b.width);
      if (s < 1) f(d, s);
    }
}

struct Stepper {
  const ModelMap& m;
  double sign;

  Vec2 f(Vec2 p) const { return sign * (kMobility * m.potential.gradient(p)); }
  Mat2 df(Vec2 p) const { return sign * (kMobility * m.potential.hessian(p)); }

  Vec2 step(Vec2 y, double h) const {
    Vec2 k1 = f(y);
    Vec2 k2 = f(y + (h / 2) * k1);
    Vec2 k3 = f(y + (h / 2) * k2);
    Vec2 k4 = f(y + h * k3);
    return y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }

  Vec2 step(Vec2 y, double h, Mat2& jac) const {
    const Mat2 id{};
    Vec2 k1 = f(y);
    Mat2 d1 = df(y);
    Vec2 y2 = y + (h / 2) * k1;
    Vec2 k2 = f(y2);
    Mat2 d2 = df(y2) * (id + (h / 2) * d1);
    Vec2 y3 = y + (h / 2) * k2;
    Vec2 k3 = f(y3);
    Mat2 d3 = df(y3) * (id + (h / 2) * d2);
    Vec2 y4 = y + h * k3;
    Vec2 k4 = f(y4);
    Mat2 d4 = df(y4) * (id + h * d3);
    jac = (id + (h / 6) * (d1 + 2 * d2 + 2 * d3 + d4)) * jac;
    return y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
};

int step_count(const IntegratorConfig& c, double t) {
  return std::max(1, static_cast<int>(std::lround(t / c.step)));
}

[[noreturn]] void no_convergence(const std::string& why) { throw DomainError("NoConvergence", why); }

}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Mat2 operator*(const Mat2& m, const Mat2& n) {
  return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d, m.c * n.a + m.d * n.c,
          m.c * n.b + m.d * n.d};
}
Mat2 operator+(const Mat2& m, const Mat2& n) { return {m.a + n.a, m.b + n.b, m.c + n.c, m.d + n.d}; }
Mat2 operator*(double s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }

Vec2 wrap(Vec2 p) {
  Vec2 r{p.x - std::floor(p.x), p.y - std::floor(p.y)};
  if (r.x >= 1) r.x -= 1;
  if (r.y >= 1) r.y -= 1;
  return r;
}

Vec2 min_image(Vec2 d) { return {d.x - std::round(d.x), d.y - std::round(d.y)}; }

double torus_distance(Vec2 p, Vec2 q) { return norm(min_image(p - q)); }

Vec2 act(Vec2 p, const UniModularMatrix& m) {
  return {p.x * static_cast<double>(m.m00) + p.y * static_cast<double>(m.m10),
          p.x * static_cast<double>(m.m01) + p.y * static_cast<double>(m.m11)};
}

namespace {

using Cplx = std::complex<double>;

Cplx cis_power(Cplx z, int k) {
  Cplx r{1, 0};
  Cplx b = k < 0 ? std::conj(z) : z;
  for (int i = 0; i < std::abs(k); ++i) r *= b;
  return r;
}

// exp(2 pi i (p x + q y)) from two sincos evaluations.
struct Phases {
  Cplx zx, zy;

  explicit Phases(Vec2 p) : zx(std::polar(1.0, kTwoPi * p.x)), zy(std::polar(1.0, kTwoPi * p.y)) {}

  Cplx operator()(const FourierTerm& t) const { return cis_power(zx, t.p) * cis_power(zy, t.q); }
};

}  // namespace

double TrigPotential::value(Vec2 p) const {
  double v = 0;
  Phases ph(p);
  for (const auto& t : terms) v += t.c * ph(t).real();
  for (const auto& b : bumps)
    for_each_bump_image(b, p, [&](Vec2, double s) { v += b.height * std::exp(1 - 1 / (1 - s)); });
  return v;
}

Vec2 TrigPotential::gradient(Vec2 p) const {
  Vec2 g;
  Phases ph(p);
  for (const auto& t : terms) {
    double s = -kTwoPi * t.c * ph(t).imag();
    g = g + Vec2{s * t.p, s * t.q};
  }
  for (const auto& b : bumps)
    for_each_bump_image(b, p, [&](Vec2 d, double s) {
      double u = 1 - s;
      double v = b.height * std::exp(1 - 1 / u);
      double vs = -v / (u * u);
      g = g + (vs * 2 / (b.width * b.width)) * (kMetric * d);
    });
  return g;
}

Mat2 TrigPotential::hessian(Vec2 p) const {
  Mat2 h{0, 0, 0, 0};
  Phases ph(p);
  for (const auto& t : terms) {
    double c = -kTwoPi * kTwoPi * t.c * ph(t).real();
    h = h + c * Mat2{1.0 * t.p * t.p, 1.0 * t.p * t.q, 1.0 * t.q * t.p, 1.0 * t.q * t.q};
  }
  for (const auto& b : bumps)
    for_each_bump_image(b, p, [&](Vec2 d, double s) {
      double u = 1 - s;
      double v = b.height * std::exp(1 - 1 / u);
      double vs = -v / (u * u);
      double vss = v / (u * u * u * u) - 2 * v / (u * u * u);
      double w2 = b.width * b.width;
      Vec2 sp = (2 / w2) * (kMetric * d);
      h = h + vss * outer(sp, sp) + (vs * 2 / w2) * kMetric;
    });
  return h;
}

TrigPotential standard_potential() { return {{{1, 0, 1.0}, {0, 1, 1.0}, {1, -1, 1.0}}, {}}; }

TrigPotential symmetrize(const TrigPotential& f, const UniModularMatrix& m) {
  auto n = order(m);
  if (!n) return f;
  std::map<std::pair<int, int>, double> coeff;
  for (const auto& t : f.terms) {
    std::int64_t p = t.p, q = t.q;
    for (int k = 0; k < *n; ++k) {
      std::int64_t cp = p, cq = q;
      if (cp < 0 || (cp == 0 && cq < 0)) {
        cp = -cp;
        cq = -cq;
      }
      coeff[{static_cast<int>(cp), static_cast<int>(cq)}] += t.c / *n;
      std::int64_t np = m.m00 * p + m.m01 * q, nq = m.m10 * p + m.m11 * q;
      p = np;
      q = nq;
    }
  }
  TrigPotential r;
  for (const auto& [k, c] : coeff) r.terms.push_back({k.first, k.second, c});
  for (const auto& b : f.bumps) {
    Vec2 c = wrap(b.center);
    for (int k = 0; k < *n; ++k) {
      auto it = std::find_if(r.bumps.begin(), r.bumps.end(), [&](const Bump& x) {
        return torus_distance(x.center, c) < 1e-12 && x.width == b.width;
      });
      if (it != r.bumps.end())
        it->height += b.height / *n;
      else
        r.bumps.push_back({c, b.height / *n, b.width});
      c = wrap(act(c, m));
    }
  }
  return r;
}

TrigPotential g0_potential(double height, double width) {
  TrigPotential f = standard_potential();
  f.bumps = {{{1.0 / 3, 2.0 / 3}, height, width}, {{2.0 / 3, 1.0 / 3}, height, width}};
  return symmetrize(f);
}

Vec2 ModelMap::velocity(Vec2 p) const {
  return static_cast<double>(direction) * (kMobility * potential.gradient(p));
}

Vec2 flow_lift(const ModelMap& m, Vec2 p, double t) {
  Stepper s{m, t < 0 ? -1.0 * m.direction : 1.0 * m.direction};
  int n = step_count(m.integrator, std::abs(t));
  double h = std::abs(t) / n;
  for (int i = 0; i < n; ++i) p = s.step(p, h);
  return p;
}

Vec2 map_lift(const ModelMap& m, Vec2 p) {
  return act(flow_lift(m, p, m.integrator.time), m.matrix);
}

Vec2 map_lift(const ModelMap& m, Vec2 p, Mat2& jacobian) {
  Stepper s{m, 1.0 * m.direction};
  int n = step_count(m.integrator, m.integrator.time);
  double h = m.integrator.time / n;
  Mat2 j{};
  for (int i = 0; i < n; ++i) p = s.step(p, h, j);
  jacobian = transpose_matrix(m.matrix) * j;
  return act(p, m.matrix);
}

Vec2 model_map_eval(const ModelMap& m, Vec2 p) { return wrap(map_lift(m, p)); }

Vec2 iterate_lift(const ModelMap& m, Vec2 p, int k) {
  for (int i = 0; i < k; ++i) p = map_lift(m, p);
  return p;
}

EigenData eigen(const Mat2& j) {
  EigenData e;
  double tr = j.a + j.d, det = j.a * j.d - j.b * j.c;
  double disc = tr * tr / 4 - det;
  if (disc < 0) {
    e.real = false;
    double im = std::sqrt(-disc);
    e.values = {std::complex<double>(tr / 2, -im), std::complex<double>(tr / 2, im)};
    return e;
  }
  double r = std::sqrt(disc);
  double l1 = tr / 2 - r, l2 = tr / 2 + r;
  if (std::abs(l1) > std::abs(l2)) std::swap(l1, l2);
  e.values = {l1, l2};
  for (int i = 0; i < 2; ++i) {
    double l = i == 0 ? l1 : l2;
    Vec2 v1{j.b, l - j.a}, v2{l - j.d, j.c};
    Vec2 v = norm(v1) >= norm(v2) ? v1 : v2;
    if (norm(v) < 1e-300) v = i == 0 ? Vec2{1, 0} : Vec2{0, 1};
    v = (1 / norm(v)) * v;
    if (v.x < -1e-12 || (std::abs(v.x) <= 1e-12 && v.y < 0)) v = -1.0 * v;
    e.vectors[i] = v;
  }
  return e;
}

Mat2 fd_jacobian(const ModelMap& m, Vec2 p, int k, double step) {
  Vec2 cx = (0.5 / step) * (iterate_lift(m, p + Vec2{step, 0}, k) - iterate_lift(m, p - Vec2{step, 0}, k));
  Vec2 cy = (0.5 / step) * (iterate_lift(m, p + Vec2{0, step}, k) - iterate_lift(m, p - Vec2{0, step}, k));
  return {cx.x, cy.x, cx.y, cy.y};
}

OrbitKind classify_eigen(const EigenData& e) {
  double a = std::abs(e.values[0]), b = std::abs(e.values[1]);
  if (a < 1 && b < 1) return OrbitKind::Sink;
  if (a > 1 && b > 1) return OrbitKind::Source;
  return OrbitKind::Saddle;
}

namespace {

// Newton on g^k(x) - x; returns the final residual.
double newton(const ModelMap& m, Vec2& x, int k, int iterations, const SearchConfig& cfg) {
  double r = 1;
  for (int it = 0; it < iterations; ++it) {
    Mat2 jac{};
    Vec2 y = x;
    for (int s = 0; s < k; ++s) {
      Mat2 js;
      y = map_lift(m, y, js);
      jac = js * jac;
    }
    Vec2 res = min_image(y - x);
    r = norm(res);
    if (r < cfg.newton_tolerance) break;
    Vec2 dx = solve(jac + Mat2{-1, 0, 0, -1}, -1.0 * res);
    double len = norm(dx);
    if (len > cfg.max_newton_step) dx = (cfg.max_newton_step / len) * dx;
    x = x + dx;
    if (len < 1e-15) break;
  }
  return r;
}

}  // namespace

PeriodicSearch find_periodic_points(const ModelMap& m, int max_period, const SearchConfig& cfg) {
  if (max_period < 1) throw DomainError("OutOfRange", "max_period must be positive");
  ModelMap coarse = m;
  coarse.integrator.step = std::max(m.integrator.step, cfg.screen_step);
  PeriodicSearch out;
  std::vector<std::pair<Vec2, int>> found;
  auto known = [&](Vec2 p) {
    return std::any_of(found.begin(), found.end(),
                       [&](const auto& f) { return torus_distance(f.first, p) < cfg.dedupe; });
  };
  for (int i = 0; i < cfg.grid; ++i)
    for (int j = 0; j < cfg.grid; ++j) {
      Vec2 seed{(i + cfg.grid_offset.x) / cfg.grid, (j + cfg.grid_offset.y) / cfg.grid};
      std::vector<double> residual;
      Vec2 q = seed;
      for (int k = 1; k <= max_period; ++k) {
        q = map_lift(coarse, q);
        residual.push_back(norm(min_image(q - seed)));
      }
      for (int k = 1; k <= max_period; ++k) {
        if (residual[k - 1] > cfg.seed_residual) continue;
        Vec2 x = seed;
        if (newton(coarse, x, k, cfg.newton_iterations, cfg) > 1e-10) {
          ++out.diverged;
          continue;
        }
        x = wrap(x);
        if (known(x)) break;
        if (newton(m, x, k, 10, cfg) > 1e-10) {
          ++out.diverged;
          continue;
        }
        x = wrap(x);
        if (known(x)) break;
        int period = k;
        for (int d = 1; d < k; ++d)
          if (k % d == 0 && torus_distance(iterate_lift(m, x, d), x) < 1e-8) {
            period = d;
            break;
          }
        found.push_back({x, period});
        break;
      }
    }
  for (const auto& [x, period] : found) {
    PeriodicPointRecord rec;
    rec.location = x;
    rec.period = period;
    rec.eigen = eigen(fd_jacobian(m, x, period, cfg.fd_step));
    rec.kind = classify_eigen(rec.eigen);
    out.points.push_back(rec);
  }
  std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) {
    if (a.period != b.period) return a.period < b.period;
    return lex_less(a.location, b.location);
  });
  return out;
}

TraceResult trace_from(const ModelMap& m, const std::vector<PeriodicPointRecord>& census, Vec2 start,
                       bool forward, int origin, const TraceConfig& cfg) {
  Stepper s{m, forward ? 1.0 * m.direction : -1.0 * m.direction};
  double h = m.integrator.step;
  long steps = static_cast<long>(cfg.max_time / h);
  TraceResult r;
  r.polyline.push_back(start);
  Vec2 y = start;
  bool left_origin = origin < 0;
  for (long i = 0; i < steps; ++i) {
    y = s.step(y, h);
    r.polyline.push_back(y);
    for (int c = 0; c < static_cast<int>(census.size()); ++c) {
      double d = torus_distance(y, census[c].location);
      if (census[c].kind != OrbitKind::Saddle) {
        if (d < cfg.capture) {
          r.limit = c;
          r.end = y;
          return r;
        }
      } else if (c == origin && !left_origin) {
        if (d > 10 * cfg.saddle_guard) left_origin = true;
      } else if (d < cfg.saddle_guard) {
        no_convergence("trajectory passes within " + std::to_string(cfg.saddle_guard) +
                       " of a saddle");
      }
    }
  }
  no_convergence("trajectory did not reach a node");
}

TraceResult trace_separatrix(const ModelMap& m, const std::vector<PeriodicPointRecord>& census,
                             int saddle, Branch branch, const TraceConfig& cfg) {
  const auto& rec = census.at(saddle);
  if (rec.kind != OrbitKind::Saddle) throw DomainError("NotASaddle", "point is not a saddle");
  bool unstable = branch == Branch::UPlus || branch == Branch::UMinus;
  double sign = branch == Branch::UPlus || branch == Branch::SPlus ? 1 : -1;
  Vec2 v = rec.eigen.vectors[unstable ? 1 : 0];
  return trace_from(m, census, rec.location + (sign * cfg.delta) * v, unstable, saddle, cfg);
}

namespace {

// First point of a trace inside the metric circle of radius r about c.
std::optional<Vec2> crossing(const std::vector<Vec2>& line, Vec2 c, double r) {
  double prev = -1;
  for (size_t i = 0; i < line.size(); ++i) {
    double d = metric_norm(min_image(line[i] - c));
    if (d <= r) {
      if (i == 0 || prev <= d) return line[i];
      double t = (prev - r) / (prev - d);
      return line[i - 1] + t * (line[i] - line[i - 1]);
    }
    prev = d;
  }
  return std::nullopt;
}

double entry_angle(const std::vector<Vec2>& line, Vec2 c, double r) {
  auto p = crossing(line, c, r);
  if (!p) no_convergence("trace never enters the node neighbourhood");
  return angle_of(min_image(*p - c));
}

// Near a node with real eigenvalues, traces arriving tangent to the weak direction keep the sign of
// their strong coordinate b, and b / |a|^k is constant with k = log|strong| / log|weak|. Close to the
// node b underflows, so it is read at the last sample where it is still resolvable.
double strong_offset(const std::vector<Vec2>& line, const PeriodicPointRecord& node) {
  if (!node.eigen.real) return 0;
  Vec2 es = node.eigen.vectors[0], ew = node.eigen.vectors[1];
  double ls = std::max(std::abs(node.eigen.values[0]), 1e-16), lw = std::abs(node.eigen.values[1]);
  if (lw <= 0 || lw >= 1) return 0;
  double k = std::log(ls) / std::log(lw);
  Mat2 basis{ew.x, es.x, ew.y, es.y};
  double orient = ew.x * es.y - ew.y * es.x > 0 ? 1 : -1;
  // Eigenvector error leaks a into b, so b must clear a relative floor.
  for (size_t i = line.size(); i-- > 0;) {
    Vec2 ab = solve(basis, min_image(line[i] - node.location));
    if (std::abs(ab.y) > 1e-7 * std::abs(ab.x) + 1e-12)
      return orient * (ab.x > 0 ? 1 : -1) * ab.y / std::pow(std::abs(ab.x), k);
  }
  return 0;
}

double circular_gap(double from, double to) {
  double d = std::fmod(to - from, kTwoPi);
  if (d <= 0) d += kTwoPi;
  return d;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }

std::string fixed3(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << v;
  return s.str();
}

}  // namespace

RotationNumber rotation_number_of_sink(const ModelMap& m, const std::vector<PeriodicPointRecord>& census,
                                       int sink, const ExtractConfig& cfg) {
  const auto& w = census.at(sink);
  if (w.kind != OrbitKind::Sink || w.period != 1)
    throw DomainError("NotAFixedSink", "rotation number needs a fixed sink");
  std::vector<std::pair<double, Vec2>> entries;
  for (int c = 0; c < static_cast<int>(census.size()); ++c) {
    if (census[c].kind != OrbitKind::Saddle) continue;
    for (Branch b : {Branch::UPlus, Branch::UMinus}) {
      auto t = trace_separatrix(m, census, c, b, cfg.trace);
      if (t.limit != sink) continue;
      auto p = crossing(t.polyline, w.location, cfg.entry_radius);
      if (!p) no_convergence("separatrix never enters the sink neighbourhood");
      entries.push_back({angle_of(min_image(*p - w.location)), wrap(*p)});
    }
  }
  RotationNumber out;
  if (entries.empty()) {
    out.no_separatrix = true;
    return out;
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  long n = static_cast<long>(entries.size());
  long shift = -1;
  for (long i = 0; i < n; ++i) {
    Vec2 y = model_map_eval(m, entries[i].second);
    double phi = angle_of(min_image(y - w.location));
    long best = 0;
    double best_d = 1e9;
    for (long j = 0; j < n; ++j) {
      double d = std::fmod(std::abs(phi - entries[j].first), kTwoPi);
      d = std::min(d, kTwoPi - d);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    long s = ((best - i) % n + n) % n;
    if (shift >= 0 && s != shift)
      throw DomainError("RotationMismatch", "entry points are not shifted uniformly");
    shift = s;
  }
  long g = gcd_long(shift, n);
  out.numerator = shift / g;
  out.denominator = n / g;
  return out;
}

Extraction extract_descriptor(const ModelMap& m, const ExtractConfig& cfg) {
  Extraction ex;
  auto search = find_periodic_points(m, 3, cfg.search);
  ex.census = search.points;
  ex.diverged = search.diverged;
  const auto& census = ex.census;
  int n = static_cast<int>(census.size());

  auto nearest = [&](Vec2 p) {
    int best = -1;
    double bd = 1e9;
    for (int c = 0; c < n; ++c) {
      double d = torus_distance(census[c].location, p);
      if (d < bd) {
        bd = d;
        best = c;
      }
    }
    if (bd > 1e-6) throw DomainError("InconsistentCensus", "orbit image is not in the census");
    return best;
  };

  // Orbits, each listed from its base point.
  std::vector<std::vector<int>> orbits;
  std::vector<bool> seen(n, false);
  for (int c = 0; c < n; ++c) {
    if (seen[c]) continue;
    std::vector<int> orb{c};
    seen[c] = true;
    for (int k = 1; k < census[c].period; ++k) {
      int next = nearest(model_map_eval(m, census[orb.back()].location));
      if (seen[next] || census[next].kind != census[c].kind)
        throw DomainError("InconsistentCensus", "orbit points disagree");
      seen[next] = true;
      orb.push_back(next);
    }
    if (nearest(model_map_eval(m, census[orb.back()].location)) != c)
      throw DomainError("InconsistentCensus", "orbit does not close up");
    auto base = std::min_element(orb.begin(), orb.end(), [&](int a, int b) {
      return lex_less(census[a].location, census[b].location);
    });
    std::rotate(orb.begin(), base, orb.end());
    orbits.push_back(orb);
  }
  auto kind_rank = [](OrbitKind k) { return k == OrbitKind::Sink ? 0 : k == OrbitKind::Source ? 1 : 2; };
  std::sort(orbits.begin(), orbits.end(), [&](const auto& a, const auto& b) {
    const auto& x = census[a[0]];
    const auto& y = census[b[0]];
    if (x.period != y.period) return x.period < y.period;
    if (x.period != 1 && x.kind != y.kind) return kind_rank(x.kind) < kind_rank(y.kind);
    return lex_less(x.location, y.location);
  });
  ex.orbit_points = orbits;

  std::vector<PointId> point_of(n);
  std::vector<Vec2> ref(n);
  DiffeoDescriptor& d = ex.descriptor;
  d.matrix = m.matrix;
  for (int o = 0; o < static_cast<int>(orbits.size()); ++o) {
    const auto& orb = orbits[o];
    Vec2 r = census[orb[0]].location;
    for (int k = 0; k < static_cast<int>(orb.size()); ++k) {
      point_of[orb[k]] = {o, k};
      ref[orb[k]] = r;
      r = act(r, m.matrix);
    }
    OrbitRecord rec;
    rec.id = o;
    rec.kind = census[orb[0]].kind;
    rec.period = census[orb[0]].period;
    if (rec.period == 1) {
      Vec2 c = act(ref[orb[0]], m.matrix) - ref[orb[0]];
      rec.anchor = {std::llround(c.x), std::llround(c.y)};
    }
    d.orbits.push_back(rec);
  }

  // Branch directions at every saddle point, transported from the base point.
  std::map<int, std::pair<Vec2, Vec2>> frame;  // census index -> (unstable, stable)
  for (const auto& orb : orbits) {
    if (census[orb[0]].kind != OrbitKind::Saddle) continue;
    const auto& e = census[orb[0]].eigen;
    Vec2 vu = e.vectors[1], vs = e.vectors[0];
    frame[orb[0]] = {vu, vs};
    for (int k = 1; k < static_cast<int>(orb.size()); ++k) {
      Mat2 j = fd_jacobian(m, ref[orb[0]], k, cfg.search.fd_step);
      Vec2 a = j * vu, b = j * vs;
      frame[orb[k]] = {(1 / norm(a)) * a, (1 / norm(b)) * b};
    }
  }

  auto trace_point = [&](int c, Vec2 dir, bool unstable, Slot slot) {
    auto t = trace_from(m, census, ref[c] + cfg.trace.delta * dir, unstable, c, cfg.trace);
    SeparatrixTrace st;
    st.saddle = point_of[c];
    st.slot = slot;
    st.target = point_of[t.limit];
    Vec2 off = t.end - ref[t.limit];
    st.deck = {std::llround(off.x), std::llround(off.y)};
    if (norm(off - Vec2{static_cast<double>(st.deck.a), static_cast<double>(st.deck.b)}) > 1e-3)
      throw DomainError("NoConvergence", "lift displacement is not near an integer");
    st.polyline = std::move(t.polyline);
    return st;
  };

  std::vector<SeparatrixTrace> traces;
  for (const auto& [c, fr] : frame) {
    traces.push_back(trace_point(c, fr.first, true, Slot::U1));
    traces.push_back(trace_point(c, -1.0 * fr.first, true, Slot::U2));
    traces.push_back(trace_point(c, fr.second, false, Slot::S1));
    traces.push_back(trace_point(c, -1.0 * fr.second, false, Slot::S2));
  }
  for (const auto& t : traces)
    if (t.saddle.phase == 0)
      d.separatrices.push_back({t.saddle.orbit, t.slot, t.target.orbit, t.target.phase, t.deck});
  normalize(d);

  for (const auto& p : expand_points(d)) {
    auto it = std::find_if(traces.begin(), traces.end(), [&](const auto& t) {
      return t.saddle == p.saddle && t.slot == p.slot;
    });
    if (it == traces.end() || !(it->target == p.target) || it->deck != p.gain)
      throw DomainError("InconsistentTraces", "traced separatrices are not equivariant");
  }

  // Cell data. A quadrant lies left or right of its unstable separatrix; the flow keeps that
  // side, so the quadrant's cell is the sink sector on the same side of the separatrix's entry.
  struct Entry {
    double angle;
    double offset;
    PointId saddle;
    Slot slot;
  };
  std::map<int, std::vector<Entry>> sink_entries;  // census index of the sink point
  for (const auto& t : traces) {
    if (!is_unstable(t.slot)) continue;
    int w = orbits[t.target.orbit][t.target.phase];
    double phi = entry_angle(t.polyline, census[w].location, cfg.cell_radius);
    if (phi > std::numbers::pi - 1e-9) phi -= kTwoPi;
    sink_entries[w].push_back({phi, strong_offset(t.polyline, census[w]), t.saddle, t.slot});
  }
  // Entries along the same weak ray are ordered counterclockwise by their strong offset.
  for (auto& [w, a] : sink_entries) {
    std::sort(a.begin(), a.end(), [](const Entry& x, const Entry& y) { return x.angle < y.angle; });
    for (size_t i = 0; i < a.size();) {
      size_t j = i + 1;
      while (j < a.size() && a[j].angle - a[j - 1].angle < 1e-9) ++j;
      std::sort(a.begin() + i, a.begin() + j, [](const Entry& x, const Entry& y) { return x.offset < y.offset; });
      i = j;
    }
  }

  auto point_name = [&](int c) {
    return std::to_string(point_of[c].orbit) + "." + std::to_string(point_of[c].phase);
  };
  auto green_name = [&](int w, int g) {
    return "t" + point_name(w) + "/" + std::to_string(g) + "@" + fixed3(cfg.green_fraction);
  };
  auto region_name = [&](int c, Slot u, Slot s) {
    return "q" + point_name(c) + (u == Slot::U1 ? "+u1" : "+u2") + (s == Slot::S1 ? "+s1" : "+s2");
  };
  auto cross = [](Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; };

  for (const auto& [c, fr] : frame)
    for (Slot u : {Slot::U1, Slot::U2})
      for (Slot s : {Slot::S1, Slot::S2}) {
        Vec2 du = (u == Slot::U1 ? 1.0 : -1.0) * fr.first;
        Vec2 ds = (s == Slot::S1 ? 1.0 : -1.0) * fr.second;
        auto tr = std::find_if(traces.begin(), traces.end(), [&](const SeparatrixTrace& t) {
          return t.saddle == point_of[c] && t.slot == u;
        });
        int w = orbits[tr->target.orbit][tr->target.phase];
        const auto& list = sink_entries[w];
        int sz = static_cast<int>(list.size());
        int at = static_cast<int>(std::find_if(list.begin(), list.end(), [&](const Entry& e) {
                                    return e.saddle == point_of[c] && e.slot == u;
                                  }) - list.begin());
        // Left of the inward direction is clockwise from the entry ray.
        int gap = cross(du, ds) > 0 ? (at - 1 + sz) % sz : at;
        std::string name = region_name(c, u, s);
        char us = u == Slot::U1 ? '1' : '2', ss = s == Slot::S1 ? '1' : '2';
        ex.cells.regions.push_back({name,
                                    {{"u" + point_name(c) + "-" + us, EdgeColor::Red},
                                     {"s" + point_name(c) + "-" + ss, EdgeColor::Blue},
                                     {green_name(w, gap), EdgeColor::Green}}});
      }

  // Quadrants map to quadrants by the linearization: branch directions are pushed forward by Dg.
  for (const auto& [c, fr] : frame) {
    Vec2 y = model_map_eval(m, census[c].location);
    int best = -1;
    double bd = 1e9;
    for (const auto& [c2, fr2] : frame) {
      double dd = torus_distance(y, census[c2].location);
      if (dd < bd) {
        bd = dd;
        best = c2;
      }
    }
    Mat2 jac = fd_jacobian(m, census[c].location, 1, cfg.search.fd_step);
    const auto& f2 = frame[best];
    Mat2 basis{f2.first.x, f2.second.x, f2.first.y, f2.second.y};
    bool u_kept = solve(basis, jac * fr.first).x > 0;
    bool s_kept = solve(basis, jac * fr.second).y > 0;
    for (Slot u : {Slot::U1, Slot::U2})
      for (Slot s : {Slot::S1, Slot::S2}) {
        Slot u2 = (u == Slot::U1) == u_kept ? Slot::U1 : Slot::U2;
        Slot s2 = (s == Slot::S1) == s_kept ? Slot::S1 : Slot::S2;
        ex.cells.permutation[region_name(c, u, s)] = region_name(best, u2, s2);
      }
  }

  for (const auto& [w, a] : sink_entries) {
    int sz = static_cast<int>(a.size());
    for (int g = 0; g < sz; ++g) {
      double width = sz == 1 ? kTwoPi : circular_gap(a[g].angle, a[(g + 1) % sz].angle);
      double th = a[g].angle + cfg.green_fraction * width;
      Vec2 u{std::cos(th), std::sin(th)};
      Vec2 start = ref[w] + (cfg.cell_radius / metric_norm(u)) * u;
      auto t = trace_from(m, census, start, false, -1, cfg.trace);
      ex.portrait.greens.push_back({green_name(w, g), std::move(t.polyline)});
    }
  }

  for (int c = 0; c < n; ++c)
    if (census[c].kind != OrbitKind::Saddle)
      ex.portrait.nodes.push_back({point_of[c], census[c].kind, census[c].location});
  for (int c = 0; c < n; ++c)
    if (census[c].kind == OrbitKind::Saddle)
      ex.portrait.nodes.push_back({point_of[c], census[c].kind, census[c].location});
  std::sort(ex.portrait.nodes.begin(), ex.portrait.nodes.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  auto thin = [](std::vector<Vec2>& line) {
    std::vector<Vec2> out;
    for (size_t i = 0; i < line.size(); i += 20) out.push_back(line[i]);
    if (!line.empty()) out.push_back(line.back());
    line = std::move(out);
  };
  for (auto& t : traces) thin(t.polyline);
  for (auto& g : ex.portrait.greens) thin(g.polyline);
  ex.portrait.separatrices = std::move(traces);
  for (const auto& cl : d.closures)
    if (cl.knot) ex.portrait.knots.push_back({cl.saddle, *cl.knot, census[orbits[cl.saddle][0]].location});
  return ex;
}

CriticalCensus critical_points(const TrigPotential& f, int grid) {
  CriticalCensus out;
  std::vector<Vec2> found;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      Vec2 x{(i + 0.5) / grid, (j + 0.5) / grid};
      for (int it = 0; it < 60; ++it) {
        Vec2 dx = solve(f.hessian(x), -1.0 * f.gradient(x));
        double len = norm(dx);
        if (len > 0.05) dx = (0.05 / len) * dx;
        x = x + dx;
        if (len < 1e-14) break;
      }
      if (norm(f.gradient(x)) > 1e-9) continue;
      x = wrap(x);
      if (std::any_of(found.begin(), found.end(), [&](Vec2 p) { return torus_distance(p, x) < 1e-6; }))
        continue;
      found.push_back(x);
      Mat2 h = f.hessian(x);
      double det = h.a * h.d - h.b * h.c, tr = h.a + h.d;
      if (det < 0) {
        ++out.saddles;
      } else if (tr < 0) {
        ++out.maxima;
        out.maxima_at.push_back(x);
      } else {
        ++out.minima;
      }
    }
  std::sort(out.maxima_at.begin(), out.maxima_at.end(), lex_less);
  return out;
}

std::vector<ScanPoint> g0_scan_grid() {
  std::vector<ScanPoint> grid;
  for (double h : {2.0, 4.0, 8.0})
    for (double w : {0.3, 0.45, 0.6}) grid.push_back({h, w});
  return grid;
}

G0Search search_g0(const ExtractConfig& cfg) {
  G0Search out;
  const std::vector<Vec2> fixed{{0, 0}, {1.0 / 3, 2.0 / 3}, {2.0 / 3, 1.0 / 3}};
  for (const auto& at : g0_scan_grid()) {
    ScanLog log{at, false, false, ""};
    auto f = g0_potential(at.height, at.width);
    auto cc = critical_points(f);
    bool maxima_fixed = cc.maxima_at.size() == 3 &&
                        std::all_of(fixed.begin(), fixed.end(), [&](Vec2 p) {
                          return std::any_of(cc.maxima_at.begin(), cc.maxima_at.end(),
                                             [&](Vec2 q) { return torus_distance(p, q) < 1e-6; });
                        });
    if (cc.maxima != 3 || cc.saddles != 6 || cc.minima != 3 || !maxima_fixed) {
      log.reason = "critical points " + std::to_string(cc.maxima) + "/" + std::to_string(cc.saddles) +
                   "/" + std::to_string(cc.minima);
      out.log.push_back(log);
      continue;
    }
    log.screened = true;
    ModelMap model;
    model.potential = f;
    model.direction = -1;
    try {
      auto ex = extract_descriptor(model, cfg);
      const auto& d = ex.descriptor;
      auto c = counts(d);
      int fixed_sources = 0, saddle_orbits = 0, sink_orbits = 0;
      for (const auto& o : d.orbits) {
        if (o.kind == OrbitKind::Source && o.period == 1) ++fixed_sources;
        if (o.kind == OrbitKind::Saddle && o.period == 3) ++saddle_orbits;
        if (o.kind == OrbitKind::Sink && o.period == 3) ++sink_orbits;
      }
      if (!(c == MorseCounts{3, 6, 3}) || fixed_sources != 3 || saddle_orbits != 2 || sink_orbits != 1 ||
          component_id(d) != 0) {
        log.reason = "map census does not match";
        out.log.push_back(log);
        continue;
      }
      log.certified = true;
      out.log.push_back(log);
      out.found = at;
      out.model = model;
      out.extraction = std::move(ex);
      return out;
    } catch (const DomainError& e) {
      log.reason = e.code() + ": " + e.what();
      out.log.push_back(log);
    }
  }
  return out;
}

}  // namespace a2t
