#include <doctest.h>

#include <random>

#include "a2torus/errors.hpp"
#include "a2torus/surgery.hpp"

using namespace a2t;

namespace {

void check_valid(const DiffeoDescriptor& d, int i) {
  CHECK(validate_G2(d).pass);
  CHECK(check_lefschetz_hopf(counts(d)).pass);
  CHECK(component_id(d) == i);
}

}  // namespace

TEST_CASE("simplest descriptors need no moves") {
  for (int i = 0; i < 4; ++i) {
    auto r = reduce_to_simplest(canonical_descriptor(i));
    CHECK(r.moves.empty());
    CHECK(descriptors_isomorphic(r.result, canonical_descriptor(i)));
  }
}

TEST_CASE("disk expansion adds one saddle orbit and one node orbit") {
  auto d = canonical_descriptor(1);
  auto e = expand(d, MoveKind::ExpandDisk, 7);
  CHECK(e.orbits.size() == d.orbits.size() + 2);
  auto c = counts(e), c0 = counts(d);
  CHECK(c.c1 == c0.c1 + 3);
  CHECK(c.c0 + c.c2 == c0.c0 + c0.c2 + 3);
  check_valid(e, 1);
  auto r = reduce_to_simplest(e);
  CHECK(r.moves.size() == 1);
  CHECK(r.moves[0].kind == MoveKind::CollapseDisk);
  CHECK(descriptors_isomorphic(r.result, d));
}

TEST_CASE("confluence merges a contractible pair of saddle orbits") {
  auto d = canonical_descriptor(0);
  auto e = expand(d, MoveKind::ExpandAnnulus, 3);
  check_valid(e, 0);
  auto r = reduce_to_simplest(e);
  CHECK(r.moves.size() == 1);
  CHECK(counts(r.result) == MorseCounts{3, 6, 3});
}

TEST_CASE("collapse on a non-contractible closure is refused") {
  auto d = canonical_descriptor(1);
  Move m;
  m.kind = MoveKind::CollapseDisk;
  m.side = OrbitKind::Sink;
  m.kept = d.ids_of(OrbitKind::Sink).front();
  m.removed = d.ids_of(OrbitKind::Saddle);
  try {
    apply_move(d, m);
    FAIL("move applied");
  } catch (const DomainError& e) {
    CHECK(e.code() == "PreconditionViolated");
  }
}

TEST_CASE("random expansion sequences reduce back to the canonical form") {
  for (int i = 0; i < 4; ++i)
    for (std::uint64_t trial = 0; trial < 25; ++trial) {
      std::mt19937_64 rng(trial * 31 + i);
      auto d = canonical_descriptor(i);
      int len = 1 + static_cast<int>(rng() % 5);
      for (int k = 0; k < len; ++k) {
        auto kind = rng() % 2 ? MoveKind::ExpandDisk : MoveKind::ExpandAnnulus;
        d = apply_move(d, random_expansion(d, kind, rng()));
        check_valid(d, i);
      }
      auto r = reduce_to_simplest(d);
      CHECK(r.moves.size() <= d.ids_of(OrbitKind::Saddle).size());
      auto step = d;
      for (const auto& m : r.moves) {
        step = apply_move(step, m);
        check_valid(step, i);
      }
      CHECK(descriptors_isomorphic(step, canonical_descriptor(i)));
      CHECK(descriptor_to_json(apply_moves(d, r.moves)) == descriptor_to_json(r.result));
    }
}

TEST_CASE("reduction is deterministic and replayable from JSON") {
  auto d = expand(expand(canonical_descriptor(2), MoveKind::ExpandDisk, 5), MoveKind::ExpandAnnulus, 9);
  auto a = reduce_to_simplest(d);
  auto b = reduce_to_simplest(d);
  CHECK(moves_to_json(a.moves) == moves_to_json(b.moves));
  auto moves = moves_from_json(moves_to_json(a.moves));
  CHECK(moves_to_json(moves) == moves_to_json(a.moves));
  CHECK(descriptor_to_json(apply_moves(d, moves)) == descriptor_to_json(a.result));
  CHECK_THROWS_AS(moves_from_json("{\"schema\":\"1\",\"moves\":[{\"kind\":\"teleport\"}]}"), DomainError);
}

TEST_CASE("mirrored moves act on mirrored descriptors") {
  auto d = canonical_descriptor(1);
  auto m = random_expansion(d, MoveKind::ExpandDisk, 17);
  auto e = apply_move(d, m);
  auto em = apply_move(mirror(d), mirror(m));
  CHECK(descriptors_isomorphic(mirror(e), em));
}

TEST_CASE("move kind names") {
  for (auto k : {MoveKind::CollapseDisk, MoveKind::ConfluenceAnnulus, MoveKind::ExpandDisk, MoveKind::ExpandAnnulus})
    CHECK(parse_move_kind(move_kind_name(k)) == k);
  CHECK_THROWS_AS(parse_move_kind("swap"), DomainError);
}
