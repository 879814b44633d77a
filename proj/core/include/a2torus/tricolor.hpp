#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace a2t {

enum class EdgeColor { Green = 0, Red = 1, Blue = 2 };

std::string color_name(EdgeColor c);
EdgeColor parse_color(const std::string& s);

struct RegionBoundary {
  std::string curve;
  EdgeColor color = EdgeColor::Green;
};

struct CellRegion {
  std::string id;
  std::vector<RegionBoundary> boundary;
};

// Triangular regions cut out by stable, unstable and chosen invariant curves,
// plus the region permutation induced by the map.
struct CellData {
  std::vector<CellRegion> regions;
  std::map<std::string, std::string> permutation;
};

struct TricolorGraph {
  std::vector<std::string> labels;
  // mate[c][v]: the neighbour of v across its boundary of color c.
  std::array<std::vector<int>, 3> mate;
  std::vector<int> perm;

  int size() const { return static_cast<int>(labels.size()); }
  bool connected() const;
  // Cycles of the two-colored subgraph, each as its vertex sequence.
  std::vector<std::vector<int>> bicolor_cycles(EdgeColor a, EdgeColor b) const;
};

TricolorGraph build_tricolor(const CellData& cells);

// Witness maps vertex v of g to witness[v] in h.
std::optional<std::vector<int>> tricolor_equivalent(const TricolorGraph& g, const TricolorGraph& h);

TricolorGraph relabel(const TricolorGraph& g, const std::vector<int>& bijection);

std::string cells_to_json(const CellData& c);
CellData cells_from_json(const std::string& text);

}  // namespace a2t
