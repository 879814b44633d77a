#include "a2torus/intmat.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "a2torus/errors.hpp"

namespace a2t {

namespace {

struct Row {
  std::int64_t x, y;
};

Row times(const Row& r, const UniModularMatrix& m) {
  return {r.x * m.m00 + r.y * m.m10, r.x * m.m01 + r.y * m.m11};
}

std::int64_t max_norm(const UniModularMatrix& b) {
  std::int64_t r = 0;
  for (auto e : b.entries()) r = std::max<std::int64_t>(r, e < 0 ? -e : e);
  return r;
}

bool better(const UniModularMatrix& a, const UniModularMatrix& b) {
  auto na = max_norm(a), nb = max_norm(b);
  if (na != nb) return na < nb;
  return a.entries() < b.entries();
}

}  // namespace

UniModularMatrix make_matrix(std::int64_t m00, std::int64_t m01, std::int64_t m10,
                             std::int64_t m11) {
  UniModularMatrix m{m00, m01, m10, m11};
  if (m.det() != 1 && m.det() != -1)
    throw DomainError("NotUnimodular", "determinant of " + to_string(m) + " is not +-1");
  return m;
}

UniModularMatrix identity() { return {}; }

UniModularMatrix multiply(const UniModularMatrix& m, const UniModularMatrix& n) {
  return {m.m00 * n.m00 + m.m01 * n.m10, m.m00 * n.m01 + m.m01 * n.m11,
          m.m10 * n.m00 + m.m11 * n.m10, m.m10 * n.m01 + m.m11 * n.m11};
}

UniModularMatrix inverse(const UniModularMatrix& m) {
  auto d = m.det();
  return {m.m11 * d, -m.m01 * d, -m.m10 * d, m.m00 * d};
}

UniModularMatrix power(const UniModularMatrix& m, int k) {
  UniModularMatrix base = k < 0 ? inverse(m) : m;
  UniModularMatrix r = identity();
  for (int i = 0; i < std::abs(k); ++i) r = multiply(r, base);
  return r;
}

std::string to_string(const UniModularMatrix& m) {
  return "[[" + std::to_string(m.m00) + "," + std::to_string(m.m01) + "],[" +
         std::to_string(m.m10) + "," + std::to_string(m.m11) + "]]";
}

std::optional<int> order(const UniModularMatrix& m) {
  UniModularMatrix p = m;
  for (int k = 1; k <= 12; ++k) {
    if (p == identity()) return k;
    p = multiply(p, m);
  }
  return std::nullopt;
}

ConjugatorPolicy parse_policy(const std::string& s) {
  if (s == "sl") return ConjugatorPolicy::SpecialOnly;
  if (s == "gl") return ConjugatorPolicy::General;
  throw DomainError("BadPolicy", "policy must be sl or gl, got " + s);
}

std::string policy_name(ConjugatorPolicy p) {
  return p == ConjugatorPolicy::SpecialOnly ? "sl" : "gl";
}

// Solves N B = B M row by row. With rows r0, r1 of B:
//   N00 r0 + N01 r1 = r0 M,   N10 r0 + N11 r1 = r1 M.
std::optional<UniModularMatrix> is_similar(const UniModularMatrix& m, const UniModularMatrix& n,
                                           ConjugatorPolicy policy, int bound) {
  if (bound < 1) throw DomainError("BadBound", "bound must be >= 1");
  if (m.trace() != n.trace() || m.det() != n.det()) return std::nullopt;
  if (m == n) return identity();

  std::optional<UniModularMatrix> best;
  auto consider = [&](Row r0, Row r1) {
    if (std::llabs(r1.x) > bound || std::llabs(r1.y) > bound) return;
    if (std::llabs(r0.x) > bound || std::llabs(r0.y) > bound) return;
    UniModularMatrix b{r0.x, r0.y, r1.x, r1.y};
    auto d = b.det();
    if (d != 1 && (policy == ConjugatorPolicy::SpecialOnly || d != -1)) return;
    if (multiply(n, b) != multiply(b, m)) return;
    if (!best || better(b, *best)) best = b;
  };

  if (n.m01 != 0 || n.m10 != 0) {
    bool from_first = n.m01 != 0;
    for (std::int64_t x = -bound; x <= bound; ++x) {
      for (std::int64_t y = -bound; y <= bound; ++y) {
        Row r{x, y};
        Row rm = times(r, m);
        std::int64_t div = from_first ? n.m01 : n.m10;
        std::int64_t diag = from_first ? n.m00 : n.m11;
        std::int64_t ox = rm.x - diag * r.x, oy = rm.y - diag * r.y;
        if (ox % div != 0 || oy % div != 0) continue;
        Row other{ox / div, oy / div};
        if (from_first)
          consider(r, other);
        else
          consider(other, r);
      }
    }
    return best;
  }

  // Diagonal N: each row is a left eigenvector of M on its own.
  std::vector<Row> first, second;
  for (std::int64_t x = -bound; x <= bound; ++x) {
    for (std::int64_t y = -bound; y <= bound; ++y) {
      Row r{x, y};
      Row rm = times(r, m);
      if (rm.x == n.m00 * x && rm.y == n.m00 * y) first.push_back(r);
      if (rm.x == n.m11 * x && rm.y == n.m11 * y) second.push_back(r);
    }
  }
  for (const auto& r0 : first)
    for (const auto& r1 : second) consider(r0, r1);
  return best;
}

std::string class_name(PeriodicClass c) {
  switch (c) {
    case PeriodicClass::Identity: return "Identity";
    case PeriodicClass::A1: return "A1";
    case PeriodicClass::A2: return "A2";
    case PeriodicClass::A3: return "A3";
    case PeriodicClass::A4: return "A4";
    case PeriodicClass::A5: return "A5";
    case PeriodicClass::A6: return "A6";
    case PeriodicClass::A7: return "A7";
    case PeriodicClass::NotFiniteOrder: return "NotFiniteOrder";
  }
  return "?";
}

UniModularMatrix normal_form(int j) {
  switch (j) {
    case 1: return {-1, 0, 0, -1};
    case 2: return {-1, -1, 1, 0};
    case 3: return {0, 1, -1, -1};
    case 4: return {0, -1, 1, 1};
    case 5: return {1, 1, -1, 0};
    case 6: return {0, -1, 1, 0};
    case 7: return {0, 1, -1, 0};
    default: throw DomainError("OutOfRange", "normal form index must be 1..7");
  }
}

PeriodicClass class_of_index(int j) {
  if (j < 1 || j > 7) throw DomainError("OutOfRange", "normal form index must be 1..7");
  return static_cast<PeriodicClass>(j);
}

Classification classify(const UniModularMatrix& m, ConjugatorPolicy policy, int bound) {
  if (m == identity()) return {PeriodicClass::Identity, identity()};
  if (!order(m)) return {PeriodicClass::NotFiniteOrder, std::nullopt};
  Classification found;
  int hits = 0;
  for (int j = 1; j <= 7; ++j) {
    auto b = is_similar(normal_form(j), m, policy, bound);
    if (!b) continue;
    if (hits == 0) found = {class_of_index(j), b};
    ++hits;
  }
  if (hits > 1)
    throw DomainError("AmbiguousClass",
                      to_string(m) + " matches several normal forms under policy " +
                          policy_name(policy));
  if (hits == 0)
    throw DomainError("Unclassified", to_string(m) +
                                          " has finite order but matches no normal form "
                                          "within the search box");
  return found;
}

PeriodicClass classify_periodic(const UniModularMatrix& m, ConjugatorPolicy policy, int bound) {
  return classify(m, policy, bound).tag;
}

const UniModularMatrix& a2_matrix() {
  static const UniModularMatrix a2{-1, -1, 1, 0};
  return a2;
}

}  // namespace a2t
