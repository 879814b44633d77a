#pragma once

#include <optional>
#include <string>
#include <vector>

#include "a2torus/constraints.hpp"
#include "a2torus/homotopy.hpp"
#include "a2torus/intmat.hpp"

namespace a2t {

enum class OrbitKind { Sink, Source, Saddle };
enum class Orientation { Positive, Negative };
enum class Slot { U1, U2, S1, S2 };

std::string kind_name(OrbitKind k);
OrbitKind parse_kind(const std::string& s);
std::string slot_name(Slot s);
Slot parse_slot(const std::string& s);
inline bool is_unstable(Slot s) { return s == Slot::U1 || s == Slot::U2; }

struct OrbitRecord {
  int id = 0;
  OrbitKind kind = OrbitKind::Sink;
  int period = 1;
  Orientation orientation = Orientation::Positive;
  // Fixed orbits only: ref * A = ref + anchor for the reference lift ref.
  TorusKnotClass anchor;
};

// Separatrix of the base point of a saddle orbit. Point k of an orbit is g^k(base).
struct SeparatrixRecord {
  int saddle = 0;
  Slot slot = Slot::U1;
  int target = 0;
  int phase = 0;
  TorusKnotClass deck;
};

struct SaddleClosureClass {
  int saddle = 0;
  std::optional<TorusKnotClass> knot;
};

struct DiffeoDescriptor {
  UniModularMatrix matrix = a2_matrix();
  std::vector<OrbitRecord> orbits;
  std::vector<SeparatrixRecord> separatrices;
  std::vector<SaddleClosureClass> closures;

  const OrbitRecord& orbit(int id) const;
  const SeparatrixRecord& separatrix(int saddle, Slot slot) const;
  SeparatrixRecord& separatrix(int saddle, Slot slot);
  bool has_orbit(int id) const;
  std::vector<int> ids_of(OrbitKind k) const;
  int next_id() const;
};

// Sorts records, checks references and slot completeness, recomputes closures.
// Throws DomainError("MalformedDescriptor").
void normalize(DiffeoDescriptor& d);

MorseCounts counts(const DiffeoDescriptor& d);

struct G2Verdict {
  bool pass = true;
  std::string clause;
};

G2Verdict validate_G2(const DiffeoDescriptor& d);
int component_id(const DiffeoDescriptor& d);
DiffeoDescriptor canonical_descriptor(int i);
DiffeoDescriptor mirror(const DiffeoDescriptor& d);

struct PointId {
  int orbit = 0;
  int phase = 0;

  friend bool operator==(const PointId&, const PointId&) = default;
  friend auto operator<=>(const PointId&, const PointId&) = default;
};

struct PointSeparatrix {
  PointId saddle;
  Slot slot = Slot::U1;
  PointId target;
  TorusKnotClass gain;
};

// Gain of the image of a separatrix of point `from` (of a saddle orbit) landing at `target`.
TorusKnotClass transport_gain(const DiffeoDescriptor& d, int saddle_orbit, int target_orbit,
                              const TorusKnotClass& gain);

// All separatrices of all saddle points, derived from base records by equivariance.
std::vector<PointSeparatrix> expand_points(const DiffeoDescriptor& d);

struct GammaVertex {
  PointId point;
};

struct GammaEdge {
  int saddle = 0;
  int from = 0;  // vertex index, target of unstable-1
  int to = 0;    // vertex index, target of unstable-2
  std::optional<TorusKnotClass> homotopy;  // deck(u2) - deck(u1)
};

struct GammaComplex {
  std::vector<GammaVertex> vertices;
  std::vector<GammaEdge> edges;
};

GammaComplex gamma_complex(const DiffeoDescriptor& d, int sink_orbit);

struct WalkStep {
  int edge = 0;
  bool forward = true;
};

TorusKnotClass loop_class(const GammaComplex& c, const std::vector<WalkStep>& cycle);

// Isomorphism up to orbit relabeling, base-point shifts and swaps of same-type slots,
// comparing closure and two-edge cycle classes up to sign.
bool descriptors_isomorphic(const DiffeoDescriptor& x, const DiffeoDescriptor& y);

std::string descriptor_to_json(const DiffeoDescriptor& d);
DiffeoDescriptor descriptor_from_json(const std::string& text);

}  // namespace a2t
