#include "a2torus/homotopy.hpp"

#include <cmath>
#include <cstdlib>

#include "a2torus/errors.hpp"

namespace a2t {

std::string to_string(const TorusKnotClass& k) {
  return "<" + std::to_string(k.a) + "," + std::to_string(k.b) + ">";
}

TorusKnotClass act(const TorusKnotClass& k, const UniModularMatrix& m) {
  return {k.a * m.m00 + k.b * m.m10, k.a * m.m01 + k.b * m.m11};
}

std::array<TorusKnotClass, 3> orbit3(const TorusKnotClass& k) {
  auto k1 = act(k, a2_matrix());
  return {k, k1, act(k1, a2_matrix())};
}

std::int64_t intersection_number(const TorusKnotClass& k1, const TorusKnotClass& k2) {
  return std::llabs(k1.a * k2.b - k1.b * k2.a);
}

std::vector<TorusKnotClass> diophantine_solutions(int epsilon) {
  if (std::abs(epsilon) > 1)
    throw DomainError("UnsupportedEpsilon", "epsilon must be -1, 0 or 1");
  // As a quadratic in a the discriminant is -3b^2 - 4 epsilon >= 0; symmetric in a.
  auto limit = static_cast<std::int64_t>(std::floor(std::sqrt(std::max(0.0, -4.0 * epsilon) / 3.0)));
  std::vector<TorusKnotClass> out;
  for (std::int64_t a = -limit; a <= limit; ++a)
    for (std::int64_t b = -limit; b <= limit; ++b)
      if (-a * a + a * b - b * b == epsilon) out.push_back({a, b});
  return out;
}

std::vector<TorusKnotClass> admissible_knot_types() { return diophantine_solutions(-1); }

TorusKnotClass up_to_sign(const TorusKnotClass& k) { return std::max(k, -k); }

bool equal_up_to_sign(const TorusKnotClass& x, const TorusKnotClass& y) {
  return x == y || x == -y;
}

}  // namespace a2t
