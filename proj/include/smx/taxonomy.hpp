#ifndef SMX_TAXONOMY_HPP
#define SMX_TAXONOMY_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smx/error.hpp"
#include "smx/graph.hpp"
#include "smx/ids.hpp"

namespace smx {

/// Selects whether a taxonomic path between two classes must go through one
/// of their common ancestors.
enum class AncestorConstraint { ViaLCA, Unconstrained };

/// Rooted acyclic subClassOf taxonomy with precomputed inclusive closures.
///
/// Ancestor and descendant sets are stored as sorted ClassId runs in two CSR
/// tables, so every pairwise query reduces to merges over short sorted ranges.
/// Depth is the longest path from the root, which keeps it monotone under
/// multiple inheritance.
class TaxonomyView {
 public:
  using EdgeList = std::vector<std::pair<ClassId, ClassId>>;  // (child, parent)

  /// Builds a view over `names` with `edges` given as (child, parent). When
  /// more than one class has no parent, `__root__` is added above them.
  static TaxonomyView build(std::vector<std::string> names, const EdgeList& edges) {
    TaxonomyView t;
    t.names_ = std::move(names);
    const std::size_t n0 = t.names_.size();
    if (n0 == 0) throw Error(ErrorKind::EmptyGraph, "taxonomy without classes");
    for (std::size_t i = 0; i < n0; ++i) {
      if (!t.index_.emplace(t.names_[i], ClassId{i}).second)
        throw Error(ErrorKind::Contract, "duplicate class identifier '" + t.names_[i] + "'");
    }

    std::vector<std::vector<ClassId>> parents(n0);
    for (auto [c, p] : edges) {
      if (c.index() >= n0 || p.index() >= n0) throw Error(ErrorKind::Lookup, "edge endpoint outside the class table");
      if (c == p) throw Error(ErrorKind::Cycle, "self loop on '" + t.names_[c.index()] + "'");
      parents[c.index()].push_back(p);
    }
    for (auto& ps : parents) {
      std::sort(ps.begin(), ps.end());
      ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    }

    std::vector<ClassId> roots;
    for (std::size_t i = 0; i < n0; ++i)
      if (parents[i].empty()) roots.push_back(ClassId{i});

    if (roots.size() >= 2) {
      if (t.index_.contains(std::string(kVirtualRoot)))
        throw Error(ErrorKind::Contract, "identifier '__root__' is reserved for the virtual root");
      const ClassId vroot{n0};
      t.names_.emplace_back(kVirtualRoot);
      t.index_.emplace(std::string(kVirtualRoot), vroot);
      for (auto r : roots) parents[r.index()].push_back(vroot);
      parents.emplace_back();
    }

    t.init_adjacency(parents);
    t.init_topology();
    t.init_closures();
    t.init_metadata();
    return t;
  }

  /// Same classes, different edge set; keeps the class table (and hence every
  /// ClassId) unchanged.
  [[nodiscard]] TaxonomyView with_edges(const EdgeList& edges) const {
    return build(names_, edges);
  }

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] std::string_view name(ClassId c) const { return names_.at(c.index()); }
  [[nodiscard]] std::span<const std::string> names() const { return names_; }

  [[nodiscard]] std::optional<ClassId> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] ClassId at(std::string_view id) const {
    if (auto c = find(id)) return *c;
    throw Error(ErrorKind::Lookup, "unknown class '" + std::string(id) + "'");
  }
  void check(ClassId c) const {
    if (!c.valid() || c.index() >= size()) throw Error(ErrorKind::Lookup, "class handle out of range");
  }

  [[nodiscard]] std::span<const ClassId> parents(ClassId c) const { return row(parent_off_, parent_, c); }
  [[nodiscard]] std::span<const ClassId> children(ClassId c) const { return row(child_off_, child_, c); }
  /// Inclusive ancestor set A(c), sorted by ClassId.
  [[nodiscard]] std::span<const ClassId> ancestors(ClassId c) const { return row(anc_off_, anc_, c); }
  /// Inclusive descendant set D(c), sorted by ClassId.
  [[nodiscard]] std::span<const ClassId> descendants(ClassId c) const { return row(desc_off_, desc_, c); }

  /// True when `ancestor` ∈ A(c).
  [[nodiscard]] bool subsumes(ClassId ancestor, ClassId c) const {
    auto a = ancestors(c);
    return std::binary_search(a.begin(), a.end(), ancestor);
  }

  [[nodiscard]] int depth(ClassId c) const { check(c); return depth_[c.index()]; }
  [[nodiscard]] int max_depth() const { return max_depth_; }
  [[nodiscard]] ClassId root() const { return root_; }
  [[nodiscard]] std::optional<ClassId> inserted_root() const { return inserted_root_; }
  [[nodiscard]] std::span<const ClassId> leaves() const { return leaves_; }
  [[nodiscard]] std::size_t edge_count() const { return parent_.size(); }
  [[nodiscard]] bool is_tree() const { return tree_; }

  /// Classes ordered so that every parent precedes its children.
  [[nodiscard]] std::span<const ClassId> topological_order() const { return topo_; }
  [[nodiscard]] std::size_t topological_position(ClassId c) const { return topo_pos_.at(c.index()); }

  /// Position of the class identifier in lexicographic order; used for
  /// deterministic tie-breaking.
  [[nodiscard]] std::size_t name_rank(ClassId c) const { return rank_.at(c.index()); }

  [[nodiscard]] EdgeList edges() const {
    EdgeList out;
    out.reserve(parent_.size());
    for (std::size_t c = 0; c < size(); ++c)
      for (auto p : parents(ClassId{c})) out.emplace_back(ClassId{c}, p);
    return out;
  }

  /// Edges (c, p) implied by a longer path from c to p.
  [[nodiscard]] EdgeList redundant_edges() const {
    EdgeList out;
    for (std::size_t ci = 0; ci < size(); ++ci) {
      const ClassId c{ci};
      auto ps = parents(c);
      for (auto p : ps) {
        const bool implied = std::any_of(ps.begin(), ps.end(), [&](ClassId q) { return q != p && subsumes(p, q); });
        if (implied) out.emplace_back(c, p);
      }
    }
    return out;
  }
  [[nodiscard]] bool is_transitively_reduced() const { return redundant_count_ == 0; }

 private:
  TaxonomyView() = default;

  template <typename T>
  std::span<const T> row(const std::vector<std::size_t>& off, const std::vector<T>& data, ClassId c) const {
    check(c);
    return {data.data() + off[c.index()], off[c.index() + 1] - off[c.index()]};
  }

  void init_adjacency(const std::vector<std::vector<ClassId>>& parents) {
    const std::size_t n = parents.size();
    std::vector<std::vector<ClassId>> children(n);
    for (std::size_t c = 0; c < n; ++c)
      for (auto p : parents[c]) children[p.index()].push_back(ClassId{c});
    pack(parents, parent_off_, parent_);
    pack(children, child_off_, child_);
  }

  static void pack(const std::vector<std::vector<ClassId>>& rows, std::vector<std::size_t>& off, std::vector<ClassId>& data) {
    off.assign(rows.size() + 1, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) off[i + 1] = off[i] + rows[i].size();
    data.clear();
    data.reserve(off.back());
    for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
  }

  void init_topology() {
    const std::size_t n = size();
    std::vector<std::size_t> pending(n);
    std::deque<ClassId> ready;
    for (std::size_t c = 0; c < n; ++c) {
      pending[c] = parents(ClassId{c}).size();
      if (pending[c] == 0) ready.push_back(ClassId{c});
    }
    topo_.clear();
    while (!ready.empty()) {
      auto c = ready.front();
      ready.pop_front();
      topo_.push_back(c);
      for (auto ch : children(c))
        if (--pending[ch.index()] == 0) ready.push_back(ch);
    }
    if (topo_.size() != n) throw Error(ErrorKind::Cycle, describe_cycle(pending));
    topo_pos_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) topo_pos_[topo_[i].index()] = i;
  }

  std::string describe_cycle(const std::vector<std::size_t>& pending) const {
    // Every class still pending has a pending parent, so walking up pending
    // parents must revisit a class.
    std::size_t start = 0;
    while (pending[start] == 0) ++start;
    std::vector<int> seen(size(), -1);
    std::vector<ClassId> walk;
    ClassId cur{start};
    while (seen[cur.index()] < 0) {
      seen[cur.index()] = static_cast<int>(walk.size());
      walk.push_back(cur);
      for (auto p : parents(cur)) {
        if (pending[p.index()] != 0) { cur = p; break; }
      }
    }
    std::string msg = "subClassOf cycle: ";
    for (std::size_t i = static_cast<std::size_t>(seen[cur.index()]); i < walk.size(); ++i)
      msg += std::string(name(walk[i])) + " < ";
    msg += std::string(name(cur));
    return msg;
  }

  void init_closures() {
    const std::size_t n = size();
    std::vector<std::vector<ClassId>> anc(n);
    std::vector<ClassId> scratch;
    for (auto c : topo_) {
      scratch.assign(1, c);
      for (auto p : parents(c)) scratch.insert(scratch.end(), anc[p.index()].begin(), anc[p.index()].end());
      std::sort(scratch.begin(), scratch.end());
      scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
      anc[c.index()] = scratch;
    }
    std::vector<std::vector<ClassId>> desc(n);
    for (std::size_t c = 0; c < n; ++c)
      for (auto a : anc[c]) desc[a.index()].push_back(ClassId{c});
    pack(anc, anc_off_, anc_);
    pack(desc, desc_off_, desc_);
  }

  void init_metadata() {
    const std::size_t n = size();
    depth_.assign(n, 0);
    for (auto c : topo_)
      for (auto p : parents(c)) depth_[c.index()] = std::max(depth_[c.index()], depth_[p.index()] + 1);
    max_depth_ = n ? *std::max_element(depth_.begin(), depth_.end()) : 0;
    root_ = topo_.front();
    if (names_[root_.index()] == kVirtualRoot) inserted_root_ = root_;

    leaves_.clear();
    tree_ = true;
    for (std::size_t c = 0; c < n; ++c) {
      if (children(ClassId{c}).empty()) leaves_.push_back(ClassId{c});
      if (parents(ClassId{c}).size() > 1) tree_ = false;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return names_[a] < names_[b]; });
    rank_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) rank_[order[i]] = i;

    redundant_count_ = redundant_edges().size();
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, ClassId> index_;
  std::vector<std::size_t> parent_off_, child_off_, anc_off_, desc_off_;
  std::vector<ClassId> parent_, child_, anc_, desc_;
  std::vector<ClassId> topo_;
  std::vector<std::size_t> topo_pos_;
  std::vector<int> depth_;
  int max_depth_ = 0;
  ClassId root_;
  std::optional<ClassId> inserted_root_;
  std::vector<ClassId> leaves_;
  std::vector<std::size_t> rank_;
  std::size_t redundant_count_ = 0;
  bool tree_ = true;
};

// ---------------------------------------------------------------------------
// Taxonomic queries.

[[nodiscard]] inline std::span<const ClassId> ancestors(const TaxonomyView& t, ClassId u) { return t.ancestors(u); }
[[nodiscard]] inline std::span<const ClassId> descendants(const TaxonomyView& t, ClassId u) { return t.descendants(u); }
[[nodiscard]] inline int depth(const TaxonomyView& t, ClassId u) { return t.depth(u); }

/// A(u) ∩ A(v), sorted by ClassId.
[[nodiscard]] inline std::vector<ClassId> common_ancestors(const TaxonomyView& t, ClassId u, ClassId v) {
  auto a = t.ancestors(u);
  auto b = t.ancestors(v);
  std::vector<ClassId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

/// Most specific common ancestors: the members of A(u) ∩ A(v) that subsume
/// no other member.
[[nodiscard]] inline std::vector<ClassId> ncca(const TaxonomyView& t, ClassId u, ClassId v) {
  const auto common = common_ancestors(t, u, v);
  std::vector<ClassId> out;
  for (auto a : common) {
    const bool general = std::any_of(common.begin(), common.end(),
                                     [&](ClassId b) { return b != a && t.subsumes(a, b); });
    if (!general) out.push_back(a);
  }
  return out;
}

/// Common ancestor maximizing `theta`; ties go to the lexicographically
/// smallest identifier. `theta` is any callable ClassId -> double.
template <typename Theta>
[[nodiscard]] ClassId mica(const TaxonomyView& t, const Theta& theta, ClassId u, ClassId v) {
  auto a = t.ancestors(u);
  auto b = t.ancestors(v);
  ClassId best;
  double best_value = 0.0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) { ++i; continue; }
    if (*j < *i) { ++j; continue; }
    const double value = theta(*i);
    if (!best.valid() || value > best_value || (value == best_value && t.name_rank(*i) < t.name_rank(best))) {
      best = *i;
      best_value = value;
    }
    ++i;
    ++j;
  }
  return best;  // the root is always common
}

/// Deepest common ancestor (max depth, ties by identifier).
[[nodiscard]] inline ClassId deepest_common_ancestor(const TaxonomyView& t, ClassId u, ClassId v) {
  return mica(t, [&](ClassId c) { return static_cast<double>(t.depth(c)); }, u, v);
}

enum class PathLength { Shortest, Longest };

/// Length (in edges) of the shortest or longest upward path from u to each of
/// its ancestors; result[i] belongs to ancestors(u)[i].
[[nodiscard]] inline std::vector<int> upward_path_lengths(const TaxonomyView& t, ClassId u, PathLength mode) {
  auto anc = t.ancestors(u);
  std::vector<ClassId> order(anc.begin(), anc.end());
  std::sort(order.begin(), order.end(),
            [&](ClassId a, ClassId b) { return t.topological_position(a) > t.topological_position(b); });
  constexpr int unset = -1;
  std::vector<int> dist(anc.size(), unset);
  auto slot = [&](ClassId c) { return static_cast<std::size_t>(std::lower_bound(anc.begin(), anc.end(), c) - anc.begin()); };
  dist[slot(u)] = 0;
  for (auto x : order) {
    const int dx = dist[slot(x)];
    if (dx == unset) continue;
    for (auto p : t.parents(x)) {
      int& dp = dist[slot(p)];
      if (dp == unset) dp = dx + 1;
      else dp = mode == PathLength::Shortest ? std::min(dp, dx + 1) : std::max(dp, dx + 1);
    }
  }
  return dist;
}

/// Upward path length from u to one ancestor a.
[[nodiscard]] inline int upward_path_length(const TaxonomyView& t, ClassId u, ClassId a, PathLength mode) {
  auto anc = t.ancestors(u);
  auto it = std::lower_bound(anc.begin(), anc.end(), a);
  if (it == anc.end() || *it != a)
    throw Error(ErrorKind::Ordering, "'" + std::string(t.name(a)) + "' does not subsume '" + std::string(t.name(u)) + "'");
  return upward_path_lengths(t, u, mode)[static_cast<std::size_t>(it - anc.begin())];
}

/// Edge count of the shortest taxonomic path between u and v. ViaLCA
/// minimizes sp(u→a) + sp(v→a) over common ancestors a; Unconstrained walks
/// subClassOf edges in both directions.
[[nodiscard]] inline int taxonomic_shortest_path(const TaxonomyView& t, ClassId u, ClassId v, AncestorConstraint c) {
  t.check(u);
  t.check(v);
  if (u == v) return 0;
  if (c == AncestorConstraint::ViaLCA) {
    auto au = t.ancestors(u);
    auto av = t.ancestors(v);
    const auto du = upward_path_lengths(t, u, PathLength::Shortest);
    const auto dv = upward_path_lengths(t, v, PathLength::Shortest);
    int best = std::numeric_limits<int>::max();
    std::size_t i = 0, j = 0;
    while (i < au.size() && j < av.size()) {
      if (au[i] < av[j]) ++i;
      else if (av[j] < au[i]) ++j;
      else { best = std::min(best, du[i] + dv[j]); ++i; ++j; }
    }
    return best;
  }
  std::vector<int> dist(t.size(), -1);
  std::queue<ClassId> q;
  dist[u.index()] = 0;
  q.push(u);
  while (!q.empty()) {
    auto x = q.front();
    q.pop();
    const int dx = dist[x.index()];
    for (auto span : {t.parents(x), t.children(x)}) {
      for (auto y : span) {
        if (dist[y.index()] >= 0) continue;
        dist[y.index()] = dx + 1;
        if (y == v) return dx + 1;
        q.push(y);
      }
    }
  }
  return dist[v.index()];  // rooted, hence connected
}

}  // namespace smx

#endif  // SMX_TAXONOMY_HPP
