#include "a2torus/tricolor.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "a2torus/errors.hpp"

namespace a2t {

std::string color_name(EdgeColor c) {
  switch (c) {
    case EdgeColor::Green: return "t-green";
    case EdgeColor::Red: return "u-red";
    case EdgeColor::Blue: return "s-blue";
  }
  return "?";
}

EdgeColor parse_color(const std::string& s) {
  if (s == "t-green" || s == "green") return EdgeColor::Green;
  if (s == "u-red" || s == "red") return EdgeColor::Red;
  if (s == "s-blue" || s == "blue") return EdgeColor::Blue;
  throw DomainError("MalformedCells", "unknown color " + s);
}

TricolorGraph build_tricolor(const CellData& cells) {
  TricolorGraph g;
  std::map<std::string, int> index;
  for (const auto& r : cells.regions) {
    if (index.count(r.id)) throw DomainError("MalformedCells", "duplicate region " + r.id);
    index[r.id] = g.size();
    g.labels.push_back(r.id);
  }
  int n = g.size();
  for (auto& m : g.mate) m.assign(n, -1);
  std::array<std::map<std::string, std::vector<int>>, 3> sharing;
  for (int v = 0; v < n; ++v) {
    std::array<int, 3> seen{0, 0, 0};
    for (const auto& b : cells.regions[v].boundary) {
      ++seen[static_cast<int>(b.color)];
      sharing[static_cast<int>(b.color)][b.curve].push_back(v);
    }
    for (int c = 0; c < 3; ++c)
      if (seen[c] != 1)
        throw DomainError("NonTriangularRegion",
                          "region " + g.labels[v] + " has " + std::to_string(seen[c]) + " " +
                              color_name(static_cast<EdgeColor>(c)) + " boundaries");
  }
  for (int c = 0; c < 3; ++c)
    for (const auto& [curve, vs] : sharing[c]) {
      if (vs.size() != 2 || vs[0] == vs[1])
        throw DomainError("MalformedCells",
                          "curve " + curve + " borders " + std::to_string(vs.size()) + " regions");
      g.mate[c][vs[0]] = vs[1];
      g.mate[c][vs[1]] = vs[0];
    }
  g.perm.assign(n, -1);
  std::vector<int> hit(n, 0);
  for (const auto& [from, to] : cells.permutation) {
    auto a = index.find(from), b = index.find(to);
    if (a == index.end() || b == index.end())
      throw DomainError("BadPermutation", "permutation names unknown region " + from + "/" + to);
    g.perm[a->second] = b->second;
    ++hit[b->second];
  }
  for (int v = 0; v < n; ++v)
    if (g.perm[v] < 0 || hit[v] != 1)
      throw DomainError("BadPermutation", "permutation is not a bijection");
  for (int c = 0; c < 3; ++c)
    for (int v = 0; v < n; ++v)
      if (g.mate[c][g.perm[v]] != g.perm[g.mate[c][v]])
        throw DomainError("BadPermutation", "permutation does not preserve " +
                                                  color_name(static_cast<EdgeColor>(c)) + " edges at " +
                                                  g.labels[v]);
  return g;
}

bool TricolorGraph::connected() const {
  if (labels.empty()) return true;
  std::vector<char> seen(size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& m : mate) {
      int w = m[v];
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == size();
}

std::vector<std::vector<int>> TricolorGraph::bicolor_cycles(EdgeColor a, EdgeColor b) const {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(size(), 0);
  const auto& ma = mate[static_cast<int>(a)];
  const auto& mb = mate[static_cast<int>(b)];
  for (int s = 0; s < size(); ++s) {
    if (seen[s]) continue;
    std::vector<int> cyc;
    int v = s;
    bool use_a = true;
    do {
      seen[v] = 1;
      cyc.push_back(v);
      v = use_a ? ma[v] : mb[v];
      use_a = !use_a;
    } while (!(v == s && use_a));
    out.push_back(cyc);
  }
  return out;
}

TricolorGraph relabel(const TricolorGraph& g, const std::vector<int>& bijection) {
  TricolorGraph h;
  int n = g.size();
  h.labels.assign(n, "");
  for (auto& m : h.mate) m.assign(n, -1);
  h.perm.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    h.labels[bijection[v]] = g.labels[v];
    for (int c = 0; c < 3; ++c) h.mate[c][bijection[v]] = bijection[g.mate[c][v]];
    h.perm[bijection[v]] = bijection[g.perm[v]];
  }
  return h;
}

namespace {

TricolorGraph disjoint_union(const TricolorGraph& g, const TricolorGraph& h) {
  TricolorGraph u;
  int n = g.size();
  u.labels = g.labels;
  u.labels.insert(u.labels.end(), h.labels.begin(), h.labels.end());
  for (int c = 0; c < 3; ++c) {
    u.mate[c] = g.mate[c];
    for (int w : h.mate[c]) u.mate[c].push_back(w + n);
  }
  u.perm = g.perm;
  for (int w : h.perm) u.perm.push_back(w + n);
  return u;
}

// Color refinement over mates and the permutation. Initial colors: lengths of the
// three bicolored cycles through v and of its permutation cycle.
std::vector<long> refine(const TricolorGraph& g) {
  int n = g.size();
  std::vector<std::vector<long>> sig(n);
  for (auto [a, b] : {std::pair{EdgeColor::Green, EdgeColor::Red},
                      std::pair{EdgeColor::Green, EdgeColor::Blue},
                      std::pair{EdgeColor::Red, EdgeColor::Blue}})
    for (const auto& cyc : g.bicolor_cycles(a, b))
      for (int v : cyc) sig[v].push_back(static_cast<long>(cyc.size()));
  for (int v = 0; v < n; ++v) {
    long len = 1;
    for (int w = g.perm[v]; w != v; w = g.perm[w]) ++len;
    sig[v].push_back(len);
  }
  std::map<std::vector<long>, long> ids;
  std::vector<long> color(n);
  for (int v = 0; v < n; ++v)
    color[v] = ids.emplace(sig[v], static_cast<long>(ids.size())).first->second;
  while (true) {
    std::map<std::vector<long>, long> next_ids;
    std::vector<long> next(n);
    for (int v = 0; v < n; ++v) {
      std::vector<long> s{color[v]};
      for (int c = 0; c < 3; ++c) s.push_back(color[g.mate[c][v]]);
      s.push_back(color[g.perm[v]]);
      next[v] = next_ids.emplace(s, static_cast<long>(next_ids.size())).first->second;
    }
    bool stable = next_ids.size() == ids.size();
    ids = std::move(next_ids);
    color = std::move(next);
    if (stable) return color;
  }
}

}  // namespace

std::optional<std::vector<int>> tricolor_equivalent(const TricolorGraph& g, const TricolorGraph& h) {
  int n = g.size();
  if (n != h.size()) return std::nullopt;
  auto colors = refine(disjoint_union(g, h));
  std::vector<long> cg(colors.begin(), colors.begin() + n), ch(colors.begin() + n, colors.end());
  {
    auto sg = cg, sh = ch;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }

  std::vector<int> f(n, -1), finv(n, -1);
  // A single assignment determines its whole component: every vertex has one mate per color.
  auto extend = [&](int v, int w, std::vector<int>& undo) {
    std::vector<std::pair<int, int>> stack{{v, w}};
    while (!stack.empty()) {
      auto [a, b] = stack.back();
      stack.pop_back();
      if (f[a] >= 0) {
        if (f[a] != b) return false;
        continue;
      }
      if (finv[b] >= 0 || cg[a] != ch[b]) return false;
      f[a] = b;
      finv[b] = a;
      undo.push_back(a);
      for (int c = 0; c < 3; ++c) stack.push_back({g.mate[c][a], h.mate[c][b]});
      stack.push_back({g.perm[a], h.perm[b]});
    }
    return true;
  };
  auto rollback = [&](const std::vector<int>& undo) {
    for (int a : undo) {
      finv[f[a]] = -1;
      f[a] = -1;
    }
  };
  std::function<bool()> solve = [&]() -> bool {
    int root = -1;
    for (int v = 0; v < n && root < 0; ++v)
      if (f[v] < 0) root = v;
    if (root < 0) return true;
    for (int w = 0; w < n; ++w) {
      if (finv[w] >= 0 || cg[root] != ch[w]) continue;
      std::vector<int> undo;
      if (extend(root, w, undo) && solve()) return true;
      rollback(undo);
    }
    return false;
  };
  if (!solve()) return std::nullopt;
  return f;
}

}  // namespace a2t
