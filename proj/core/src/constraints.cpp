#include "a2torus/constraints.hpp"

#include "a2torus/errors.hpp"

namespace a2t {

Verdict check_lefschetz_hopf(const MorseCounts& c, const BettiVector& beta) {
  if (c.c0 < 0 || c.c1 < 0 || c.c2 < 0)
    throw DomainError("NegativeCount", "Morse counts must be non-negative");
  if (c.c0 < beta.beta0) return {false, 1, "C0 >= beta0 fails"};
  if (c.c1 - c.c0 < beta.beta1 - beta.beta0) return {false, 2, "C1 - C0 >= beta1 - beta0 fails"};
  if (c.c0 - c.c1 + c.c2 != beta.euler()) return {false, 3, "C0 - C1 + C2 = chi fails"};
  return {};
}

MorseCounts minimal_counts(int i) {
  switch (i) {
    case 0: return {3, 6, 3};
    case 1: return {1, 3, 2};
    case 2: return {2, 3, 1};
    case 3: return {3, 6, 3};
    default: throw DomainError("OutOfRange", "component index must be 0..3");
  }
}

}  // namespace a2t
