#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "a2torus/intmat.hpp"

namespace a2t {

// Free-homotopy class <a,b> of a closed curve on the torus; also used as a deck vector.
struct TorusKnotClass {
  std::int64_t a = 0, b = 0;

  bool contractible() const { return a == 0 && b == 0; }

  friend bool operator==(const TorusKnotClass&, const TorusKnotClass&) = default;
  friend auto operator<=>(const TorusKnotClass&, const TorusKnotClass&) = default;
};

inline TorusKnotClass operator+(TorusKnotClass x, TorusKnotClass y) { return {x.a + y.a, x.b + y.b}; }
inline TorusKnotClass operator-(TorusKnotClass x, TorusKnotClass y) { return {x.a - y.a, x.b - y.b}; }
inline TorusKnotClass operator-(TorusKnotClass x) { return {-x.a, -x.b}; }

std::string to_string(const TorusKnotClass& k);

TorusKnotClass act(const TorusKnotClass& k, const UniModularMatrix& m);
std::array<TorusKnotClass, 3> orbit3(const TorusKnotClass& k);
std::int64_t intersection_number(const TorusKnotClass& k1, const TorusKnotClass& k2);

// Sorted lexicographically. Throws DomainError("UnsupportedEpsilon") for |epsilon| > 1.
std::vector<TorusKnotClass> diophantine_solutions(int epsilon);
std::vector<TorusKnotClass> admissible_knot_types();

// Representative of {k, -k}: the lexicographically larger one.
TorusKnotClass up_to_sign(const TorusKnotClass& k);
bool equal_up_to_sign(const TorusKnotClass& x, const TorusKnotClass& y);

}  // namespace a2t
