#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "a2torus/errors.hpp"
#include "a2torus/tricolor.hpp"
#include "support/oracles.hpp"

using namespace a2t;

namespace {

CellData fixture() {
  std::ifstream in(std::string(A2T_TEST_DATA) + "/g1_canonical_cells.json");
  std::stringstream s;
  s << in.rdbuf();
  return cells_from_json(s.str());
}

oracle::Graph plain(const TricolorGraph& g) {
  oracle::Graph o;
  o.n = g.size();
  o.mate = g.mate;
  o.perm = g.perm;
  return o;
}

std::vector<int> shuffled(int n, std::uint64_t seed) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

// Same regions with the identity permutation.
TricolorGraph frozen(const TricolorGraph& g) {
  TricolorGraph h = g;
  for (int v = 0; v < g.size(); ++v) h.perm[v] = v;
  return h;
}

int errors_with(const CellData& c, const std::string& code) {
  try {
    build_tricolor(c);
  } catch (const DomainError& e) {
    return e.code() == code;
  }
  return 0;
}

}  // namespace

TEST_CASE("canonical g1 cells give twelve vertices and one red-green cycle") {
  auto g = build_tricolor(fixture());
  CHECK(g.size() == 12);
  CHECK(g.connected());
  auto cycles = g.bicolor_cycles(EdgeColor::Red, EdgeColor::Green);
  REQUIRE(cycles.size() == 1);
  const auto& c = cycles[0];
  REQUIRE(c.size() == 12);
  std::vector<int> pos(12);
  for (int i = 0; i < 12; ++i) pos[c[i]] = i;
  int shift = (pos[g.perm[c[0]]] + 12) % 12;
  for (int i = 0; i < 12; ++i) CHECK(pos[g.perm[c[i]]] == (i + shift) % 12);
  CHECK((shift == 4 || shift == 8));
}

TEST_CASE("cell and permutation counts follow the Euler count") {
  // 6 nodes and saddles, 12 separatrices, 6 faces, each split in two by a green curve.
  auto cells = fixture();
  CHECK(cells.regions.size() == 2 * (12 - 6));
  CHECK(cells.permutation.size() == cells.regions.size());
}

TEST_CASE("equivalence is detected through relabeling") {
  auto g = build_tricolor(fixture());
  CHECK(tricolor_equivalent(g, g).has_value());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto h = relabel(g, shuffled(g.size(), seed));
    auto w = tricolor_equivalent(g, h);
    REQUIRE(w.has_value());
    for (int v = 0; v < g.size(); ++v) {
      CHECK(h.perm[(*w)[v]] == (*w)[g.perm[v]]);
      for (int c = 0; c < 3; ++c) CHECK(h.mate[c][(*w)[v]] == (*w)[g.mate[c][v]]);
    }
    CHECK(oracle::equivalent(plain(g), plain(h)));
  }
}

TEST_CASE("equivalence is an equivalence relation on a pool and agrees with the oracle") {
  auto g = build_tricolor(fixture());
  std::vector<TricolorGraph> pool;
  for (std::uint64_t s = 1; s <= 4; ++s) {
    pool.push_back(relabel(g, shuffled(12, s)));
    pool.push_back(relabel(frozen(g), shuffled(12, s + 50)));
  }
  int n = static_cast<int>(pool.size());
  std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      eq[a][b] = tricolor_equivalent(pool[a], pool[b]).has_value();
      CHECK(eq[a][b] == oracle::equivalent(plain(pool[a]), plain(pool[b])));
    }
  for (int a = 0; a < n; ++a) {
    CHECK(eq[a][a]);
    for (int b = 0; b < n; ++b) {
      CHECK(eq[a][b] == eq[b][a]);
      for (int c = 0; c < n; ++c)
        if (eq[a][b] && eq[b][c]) CHECK(eq[a][c]);
    }
  }
  CHECK_FALSE(eq[0][1]);
}

TEST_CASE("two disjoint copies are disconnected") {
  auto one = fixture();
  CellData two = one;
  for (auto r : one.regions) {
    r.id += "'";
    for (auto& b : r.boundary) b.curve += "'";
    two.regions.push_back(r);
  }
  for (const auto& [a, b] : one.permutation) two.permutation[a + "'"] = b + "'";
  auto g = build_tricolor(two);
  CHECK(g.size() == 24);
  CHECK_FALSE(g.connected());
  CHECK_FALSE(tricolor_equivalent(g, build_tricolor(one)).has_value());
}

TEST_CASE("malformed cell data is rejected") {
  auto c = fixture();
  c.regions[0].boundary.pop_back();
  CHECK(errors_with(c, "NonTriangularRegion"));

  auto d = fixture();
  d.regions[0].boundary[2].curve = "lonely";
  CHECK(errors_with(d, "MalformedCells"));

  auto e = fixture();
  e.permutation.begin()->second = std::next(e.permutation.begin())->second;
  CHECK(errors_with(e, "BadPermutation"));

  auto f = fixture();
  std::swap(f.permutation["c0a"], f.permutation["c0b"]);
  CHECK(errors_with(f, "BadPermutation"));
}

TEST_CASE("cell JSON round trip") {
  auto c = fixture();
  auto text = cells_to_json(c);
  CHECK(cells_to_json(cells_from_json(text)) == text);
  CHECK_THROWS_AS(cells_from_json("[]"), DomainError);
  CHECK(parse_color(color_name(EdgeColor::Blue)) == EdgeColor::Blue);
}
