#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "a2torus/descriptor.hpp"
#include "a2torus/intmat.hpp"
#include "a2torus/tricolor.hpp"

namespace a2t {

struct Vec2 {
  double x = 0, y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a);

// Column-vector convention for linear maps of the plane.
struct Mat2 {
  double a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]
};

inline Vec2 operator*(const Mat2& m, Vec2 v) { return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y}; }
Mat2 operator*(const Mat2& m, const Mat2& n);
Mat2 operator+(const Mat2& m, const Mat2& n);
Mat2 operator*(double s, const Mat2& m);

Vec2 wrap(Vec2 p);
Vec2 min_image(Vec2 d);
double torus_distance(Vec2 p, Vec2 q);
// The row-vector action p * M on the plane.
Vec2 act(Vec2 p, const UniModularMatrix& m);

// sum c cos 2pi(p x + q y), plus compactly supported bumps measured in the invariant metric.
struct FourierTerm {
  int p = 0, q = 0;
  double c = 0;
};

struct Bump {
  Vec2 center;
  double height = 0;
  double width = 0.1;
};

struct TrigPotential {
  std::vector<FourierTerm> terms;
  std::vector<Bump> bumps;

  double value(Vec2 p) const;
  Vec2 gradient(Vec2 p) const;
  Mat2 hessian(Vec2 p) const;
};

TrigPotential standard_potential();
// (F + F o A + F o A^2) / 3 with like terms and coincident bumps merged.
TrigPotential symmetrize(const TrigPotential& f, const UniModularMatrix& m = a2_matrix());
// Standard potential raised by bumps of the given height at (1/3,2/3) and (2/3,1/3).
TrigPotential g0_potential(double height, double width);

struct IntegratorConfig {
  double step = 1e-3;
  double time = 1.0;
};

struct ModelMap {
  TrigPotential potential = standard_potential();
  int direction = 1;
  UniModularMatrix matrix = a2_matrix();
  IntegratorConfig integrator;

  Vec2 velocity(Vec2 p) const;
};

// Flow of velocity() for time t on the universal cover.
Vec2 flow_lift(const ModelMap& m, Vec2 p, double t);
// A(xi^1(p)) on the universal cover, and its Jacobian.
Vec2 map_lift(const ModelMap& m, Vec2 p);
Vec2 map_lift(const ModelMap& m, Vec2 p, Mat2& jacobian);
Vec2 model_map_eval(const ModelMap& m, Vec2 p);
Vec2 iterate_lift(const ModelMap& m, Vec2 p, int k);

struct EigenData {
  std::array<std::complex<double>, 2> values;
  // Real eigenvectors, unit length, first nonzero coordinate positive. Unset when complex.
  std::array<Vec2, 2> vectors;
  bool real = true;
};

EigenData eigen(const Mat2& j);
Mat2 fd_jacobian(const ModelMap& m, Vec2 p, int k, double step = 1e-6);
OrbitKind classify_eigen(const EigenData& e);

struct PeriodicPointRecord {
  Vec2 location;
  int period = 1;
  OrbitKind kind = OrbitKind::Sink;
  // Of the differential of g^period; values sorted by modulus.
  EigenData eigen;
};

struct SearchConfig {
  int grid = 64;
  // Position of each seed within its grid cell, in cell units.
  Vec2 grid_offset{0.5, 0.5};
  double seed_residual = 0.2;
  // Integrator step for seed screening and the first Newton stage.
  double screen_step = 1e-2;
  double newton_tolerance = 1e-13;
  int newton_iterations = 60;
  double max_newton_step = 0.1;
  double dedupe = 1e-6;
  double fd_step = 1e-6;
};

struct PeriodicSearch {
  std::vector<PeriodicPointRecord> points;  // sorted by period, then x, then y
  int diverged = 0;
};

PeriodicSearch find_periodic_points(const ModelMap& m, int max_period, const SearchConfig& cfg = {});

enum class Branch { UPlus, UMinus, SPlus, SMinus };

struct TraceConfig {
  double delta = 1e-6;
  double capture = 1e-4;
  double saddle_guard = 1e-4;
  double max_time = 400;
};

struct TraceResult {
  std::vector<Vec2> polyline;  // on the universal cover
  int limit = -1;              // index into the census
  Vec2 end;
};

// Throws DomainError("NoConvergence") on a saddle connection or time-out.
TraceResult trace_from(const ModelMap& m, const std::vector<PeriodicPointRecord>& census, Vec2 start,
                       bool forward, int origin, const TraceConfig& cfg = {});
TraceResult trace_separatrix(const ModelMap& m, const std::vector<PeriodicPointRecord>& census,
                             int saddle, Branch branch, const TraceConfig& cfg = {});

struct RotationNumber {
  long numerator = 0;
  long denominator = 1;
  bool no_separatrix = false;  // empty landing set
};

struct ExtractConfig {
  SearchConfig search;
  TraceConfig trace;
  double entry_radius = 1e-3;
  double cell_radius = 1e-2;
  double green_fraction = 0.5;
};

RotationNumber rotation_number_of_sink(const ModelMap& m, const std::vector<PeriodicPointRecord>& census,
                                       int sink, const ExtractConfig& cfg = {});

struct SeparatrixTrace {
  PointId saddle;
  Slot slot = Slot::U1;
  PointId target;
  TorusKnotClass deck;
  std::vector<Vec2> polyline;
};

struct PortraitNode {
  PointId id;
  OrbitKind kind = OrbitKind::Sink;
  Vec2 location;
};

struct GreenCurve {
  std::string name;
  std::vector<Vec2> polyline;
};

struct KnotLabel {
  int saddle = 0;
  TorusKnotClass knot;
  Vec2 at;
};

struct Portrait {
  std::vector<PortraitNode> nodes;
  std::vector<SeparatrixTrace> separatrices;
  std::vector<GreenCurve> greens;
  std::vector<KnotLabel> knots;
};

struct Extraction {
  DiffeoDescriptor descriptor;
  CellData cells;
  Portrait portrait;
  std::vector<PeriodicPointRecord> census;
  // census index of every orbit point
  std::vector<std::vector<int>> orbit_points;
  int diverged = 0;
};

Extraction extract_descriptor(const ModelMap& m, const ExtractConfig& cfg = {});

struct CriticalCensus {
  int maxima = 0, saddles = 0, minima = 0;
  std::vector<Vec2> maxima_at;
};

// Newton on grad F = 0 from a grid of seeds.
CriticalCensus critical_points(const TrigPotential& f, int grid = 32);

struct ScanPoint {
  double height = 0, width = 0;
};

// Fixed, ordered scan grid for the g0 model.
std::vector<ScanPoint> g0_scan_grid();

struct ScanLog {
  ScanPoint at;
  bool screened = false;
  bool certified = false;
  std::string reason;
};

struct G0Search {
  std::optional<ScanPoint> found;
  std::vector<ScanLog> log;
  std::optional<ModelMap> model;
  std::optional<Extraction> extraction;
};

// Downhill flow on g0_potential; stops at the first certified grid point.
G0Search search_g0(const ExtractConfig& cfg = {});

std::string potential_to_json(const TrigPotential& f);
TrigPotential potential_from_json(const std::string& text);
std::string portrait_to_json(const Portrait& p);
Portrait portrait_from_json(const std::string& text);

}  // namespace a2t
