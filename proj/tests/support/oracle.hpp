#ifndef SMX_TESTS_ORACLE_HPP
#define SMX_TESTS_ORACLE_HPP

// Brute-force reference implementations used to check the library. They work
// on plain adjacency lists and never call into smx beyond building views.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "smx/taxonomy.hpp"

namespace oracle {

/// Rooted DAG, node 0 is the root, parents[i] lists direct parents of i.
struct Dag {
  std::vector<std::vector<int>> parents;
  [[nodiscard]] int size() const { return static_cast<int>(parents.size()); }

  [[nodiscard]] std::vector<std::vector<int>> children() const {
    std::vector<std::vector<int>> ch(parents.size());
    for (int i = 0; i < size(); ++i)
      for (int p : parents[i]) ch[p].push_back(i);
    return ch;
  }
};

inline std::string node_name(int i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "n%03d", i);
  return buf;
}

inline smx::TaxonomyView to_view(const Dag& d) {
  std::vector<std::string> names;
  smx::TaxonomyView::EdgeList edges;
  for (int i = 0; i < d.size(); ++i) names.push_back(node_name(i));
  for (int i = 0; i < d.size(); ++i)
    for (int p : d.parents[i]) edges.emplace_back(smx::ClassId{static_cast<std::size_t>(i)}, smx::ClassId{static_cast<std::size_t>(p)});
  return smx::TaxonomyView::build(names, edges);
}

inline smx::ClassId cid(int i) { return smx::ClassId{static_cast<std::size_t>(i)}; }

/// Every node i > 0 picks 1..max_parents distinct parents among lower ids, so
/// node 0 is the only root. With skip_prob > 0 some parents are chosen from
/// an ancestor set, producing redundant edges.
inline Dag random_dag(std::mt19937_64& rng, int n, int max_parents = 3) {
  Dag d;
  d.parents.resize(n);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> k(1, std::min(max_parents, i));
    std::uniform_int_distribution<int> pick(0, i - 1);
    const int want = k(rng);
    std::set<int> ps;
    while (static_cast<int>(ps.size()) < want) ps.insert(pick(rng));
    d.parents[i].assign(ps.begin(), ps.end());
  }
  return d;
}

inline Dag random_tree(std::mt19937_64& rng, int n) { return random_dag(rng, n, 1); }

/// Reflexive upward closure by plain DFS.
inline std::set<int> ancestors(const Dag& d, int u) {
  std::set<int> seen;
  std::vector<int> stack{u};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (!seen.insert(x).second) continue;
    for (int p : d.parents[x]) stack.push_back(p);
  }
  return seen;
}

inline std::set<int> descendants(const Dag& d, int u) {
  std::set<int> out;
  for (int i = 0; i < d.size(); ++i)
    if (ancestors(d, i).count(u)) out.insert(i);
  return out;
}

/// Longest root-to-u path, by enumerating every upward path.
inline int depth(const Dag& d, int u) {
  int best = 0;
  std::function<void(int, int)> walk = [&](int x, int len) {
    if (d.parents[x].empty()) best = std::max(best, len);
    for (int p : d.parents[x]) walk(p, len + 1);
  };
  walk(u, 0);
  return best;
}

/// Edge (u, p) is redundant iff p is reachable from another parent of u.
inline std::set<std::pair<int, int>> redundant_edges(const Dag& d) {
  std::set<std::pair<int, int>> out;
  for (int u = 0; u < d.size(); ++u)
    for (int p : d.parents[u])
      for (int q : d.parents[u])
        if (q != p && ancestors(d, q).count(p)) out.emplace(u, p);
  return out;
}

inline std::set<int> common_ancestors(const Dag& d, int u, int v) {
  auto a = ancestors(d, u), b = ancestors(d, v);
  std::set<int> out;
  for (int x : a)
    if (b.count(x)) out.insert(x);
  return out;
}

/// Common ancestors with no other common ancestor below them.
inline std::set<int> ncca(const Dag& d, int u, int v) {
  auto common = common_ancestors(d, u, v);
  std::set<int> out;
  for (int a : common) {
    bool minimal = true;
    for (int b : common)
      if (b != a && ancestors(d, b).count(a)) minimal = false;
    if (minimal) out.insert(a);
  }
  return out;
}

/// Shortest upward distance from u to every node (-1 if not an ancestor).
inline std::vector<int> up_bfs(const Dag& d, int u) {
  std::vector<int> dist(d.size(), -1);
  std::queue<int> q;
  dist[u] = 0;
  q.push(u);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int p : d.parents[x])
      if (dist[p] < 0) {
        dist[p] = dist[x] + 1;
        q.push(p);
      }
  }
  return dist;
}

inline int via_lca_path(const Dag& d, int u, int v) {
  auto du = up_bfs(d, u), dv = up_bfs(d, v);
  int best = std::numeric_limits<int>::max();
  for (int a = 0; a < d.size(); ++a)
    if (du[a] >= 0 && dv[a] >= 0) best = std::min(best, du[a] + dv[a]);
  return best;
}

inline int undirected_path(const Dag& d, int u, int v) {
  auto ch = d.children();
  std::vector<int> dist(d.size(), -1);
  std::queue<int> q;
  dist[u] = 0;
  q.push(u);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    auto visit = [&](int y) {
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
    };
    for (int p : d.parents[x]) visit(p);
    for (int c : ch[x]) visit(c);
  }
  return dist[v];
}

/// 1 - ln|D(c)| / ln|C|
inline double seco(const Dag& d, int c) {
  return 1.0 - std::log(static_cast<double>(descendants(d, c).size())) / std::log(static_cast<double>(d.size()));
}

/// argmax of theta over the common ancestors, ties to the smaller name.
template <typename Theta>
int mica(const Dag& d, const Theta& theta, int u, int v) {
  int best = -1;
  for (int a : common_ancestors(d, u, v))
    if (best < 0 || theta(a) > theta(best)) best = a;  // set order = name order
  return best;
}

}  // namespace oracle

#endif  // SMX_TESTS_ORACLE_HPP
