#pragma once

// Brute-force reference implementations. They share no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using M = std::array<std::int64_t, 4>;  // m00 m01 m10 m11

inline M mul(const M& x, const M& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

inline std::int64_t det(const M& x) { return x[0] * x[3] - x[1] * x[2]; }

inline std::optional<int> order(const M& x, int cap = 12) {
  M p = x;
  for (int k = 1; k <= cap; ++k) {
    if (p == M{1, 0, 0, 1}) return k;
    p = mul(p, x);
  }
  return std::nullopt;
}

// Some B with B x = y B and det B in dets, |entries| <= bound.
inline std::optional<M> similar(const M& x, const M& y, int bound, std::set<int> dets = {1}) {
  for (std::int64_t a = -bound; a <= bound; ++a)
    for (std::int64_t b = -bound; b <= bound; ++b)
      for (std::int64_t c = -bound; c <= bound; ++c)
        for (std::int64_t d = -bound; d <= bound; ++d) {
          M B{a, b, c, d};
          if (!dets.count(static_cast<int>(det(B)))) continue;
          if (mul(B, x) == mul(y, B)) return B;
        }
  return std::nullopt;
}

// The seven finite-order normal forms, 1-based.
inline M normal(int j) {
  static const M forms[7] = {{-1, 0, 0, -1}, {-1, -1, 1, 0}, {0, 1, -1, -1}, {0, -1, 1, 1},
                             {1, 1, -1, 0},  {0, -1, 1, 0},  {0, 1, -1, 0}};
  return forms[j - 1];
}

// Pairs (a, b) with -a^2 + ab - b^2 = eps, |a|,|b| <= r, sorted.
inline std::vector<std::pair<int, int>> form_scan(int eps, int r) {
  std::vector<std::pair<int, int>> out;
  for (int a = -r; a <= r; ++a)
    for (int b = -r; b <= r; ++b)
      if (-a * a + a * b - b * b == eps) out.push_back({a, b});
  return out;
}

inline std::pair<std::int64_t, std::int64_t> act(std::pair<std::int64_t, std::int64_t> k, const M& m) {
  return {k.first * m[0] + k.second * m[2], k.first * m[1] + k.second * m[3]};
}

// Morse relations on the torus: 0 when all hold, else the first failing one.
inline int first_violated(int c0, int c1, int c2) {
  if (c0 < 1) return 1;
  if (c1 - c0 < 1) return 2;
  if (c0 - c1 + c2 != 0) return 3;
  return 0;
}

// Three-color graph as plain arrays. mate[c][v], perm[v].
struct Graph {
  int n = 0;
  std::array<std::vector<int>, 3> mate;
  std::vector<int> perm;
};

// A color- and permutation-preserving bijection of a connected graph is fixed by the
// image of one vertex; try every image and propagate.
inline bool equivalent(const Graph& g, const Graph& h) {
  if (g.n != h.n) return false;
  if (g.n == 0) return true;
  for (int start = 0; start < h.n; ++start) {
    std::vector<int> f(g.n, -1), used(h.n, 0);
    std::vector<int> stack{0};
    f[0] = start;
    used[start] = 1;
    bool ok = true;
    while (ok && !stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      std::vector<std::pair<int, int>> next;
      for (int c = 0; c < 3; ++c) next.push_back({g.mate[c][v], h.mate[c][f[v]]});
      next.push_back({g.perm[v], h.perm[f[v]]});
      for (auto [u, w] : next) {
        if (f[u] == -1) {
          if (used[w]) {
            ok = false;
            break;
          }
          f[u] = w;
          used[w] = 1;
          stack.push_back(u);
        } else if (f[u] != w) {
          ok = false;
          break;
        }
      }
    }
    if (ok && std::find(f.begin(), f.end(), -1) == f.end()) {
      for (int v = 0; v < g.n && ok; ++v)
        for (int c = 0; c < 3; ++c)
          if (f[g.mate[c][v]] != h.mate[c][f[v]]) ok = false;
      if (ok) return true;
    }
  }
  return false;
}

// Standard potential cos 2pi x + cos 2pi y + cos 2pi(x - y) and its critical points.
inline double standard_value(double x, double y) {
  const double t = 2 * M_PI;
  return std::cos(t * x) + std::cos(t * y) + std::cos(t * (x - y));
}

struct Critical {
  double x, y, value;
  int index;  // 0 minimum, 1 saddle, 2 maximum
};

inline std::vector<Critical> standard_critical_points() {
  return {{0, 0, 3, 2},     {1.0 / 3, 2.0 / 3, -1.5, 0}, {2.0 / 3, 1.0 / 3, -1.5, 0},
          {0.5, 0, -1, 1},  {0, 0.5, -1, 1},            {0.5, 0.5, -1, 1}};
}

// Rotation number at the origin of the g1 model from the straight separatrices: the six
// saddle lifts adjacent to the origin, ordered by angle, are permuted by the row action.
inline std::pair<int, int> g1_rotation(const M& m) {
  std::vector<std::pair<double, double>> rays{{0.5, 0}, {0.5, 0.5}, {0, 0.5}, {-0.5, 0}, {-0.5, -0.5}, {0, -0.5}};
  auto angle = [](std::pair<double, double> p) {
    double a = std::atan2(p.second, p.first);
    return a < 0 ? a + 2 * M_PI : a;
  };
  std::sort(rays.begin(), rays.end(), [&](auto p, auto q) { return angle(p) < angle(q); });
  auto img = std::make_pair(rays[0].first * m[0] + rays[0].second * m[2], rays[0].first * m[1] + rays[0].second * m[3]);
  int shift = 0;
  for (int i = 0; i < 6; ++i)
    if (std::abs(rays[i].first - img.first) < 1e-12 && std::abs(rays[i].second - img.second) < 1e-12) shift = i;
  int n = 6, g = std::gcd(shift, n);
  return {shift / g, n / g};
}

}  // namespace oracle
