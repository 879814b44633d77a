#pragma once

#include <string>

namespace a2t {

struct MorseCounts {
  int c0 = 0, c1 = 0, c2 = 0;

  friend bool operator==(const MorseCounts&, const MorseCounts&) = default;
};

struct BettiVector {
  int beta0 = 1, beta1 = 2, beta2 = 1;

  int euler() const { return beta0 - beta1 + beta2; }
};

inline BettiVector torus_betti() { return {1, 2, 1}; }

struct Verdict {
  bool pass = true;
  // 1: C0 >= b0, 2: C1 - C0 >= b1 - b0, 3: C0 - C1 + C2 = chi. 0 when passing.
  int violated = 0;
  std::string message;
};

Verdict check_lefschetz_hopf(const MorseCounts& c, const BettiVector& beta = torus_betti());
MorseCounts minimal_counts(int i);

}  // namespace a2t
