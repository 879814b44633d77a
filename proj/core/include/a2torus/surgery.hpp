#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "a2torus/descriptor.hpp"

namespace a2t {

enum class MoveKind { CollapseDisk, ConfluenceAnnulus, ExpandDisk, ExpandAnnulus };

std::string move_kind_name(MoveKind k);
MoveKind parse_move_kind(const std::string& s);

struct Move {
  MoveKind kind = MoveKind::CollapseDisk;
  // Sink or Source: which kind of node the move keeps, merges or inserts.
  OrbitKind side = OrbitKind::Sink;
  // collapse-disk
  int kept = -1;
  std::vector<int> removed;
  // confluence-annulus: the degree-2 node orbit
  int node = -1;
  // expansions: quadrant of the base point of `saddle`, and ids of the inserted orbits
  int saddle = -1;
  Slot stable_slot = Slot::S1;
  Slot unstable_slot = Slot::U1;
  int new_saddle = -1;
  int new_node = -1;
};

Move mirror(const Move& m);

// Throws DomainError("PreconditionViolated") naming the failed clause.
DiffeoDescriptor apply_move(const DiffeoDescriptor& d, const Move& m);
DiffeoDescriptor apply_moves(DiffeoDescriptor d, const std::vector<Move>& moves);

// Random insertion of a cancellable pair that leaves every existing closure class intact.
Move random_expansion(const DiffeoDescriptor& d, MoveKind kind, std::uint64_t seed);
DiffeoDescriptor expand(const DiffeoDescriptor& d, MoveKind kind, std::uint64_t seed);

struct Reduction {
  DiffeoDescriptor result;
  std::vector<Move> moves;
};

// Throws DomainError("StuckDescriptor") when no move applies before reaching the simplest form.
Reduction reduce_to_simplest(const DiffeoDescriptor& d);

std::string moves_to_json(const std::vector<Move>& moves);
std::vector<Move> moves_from_json(const std::string& text);

}  // namespace a2t
