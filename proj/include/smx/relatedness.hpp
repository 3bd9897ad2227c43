#ifndef SMX_RELATEDNESS_HPP
#define SMX_RELATEDNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "smx/error.hpp"
#include "smx/graph.hpp"

namespace smx {

/// Cost multiplier per predicate. An edge costs multiplier × edge weight.
struct PredicateWeightScheme {
  std::map<std::string, double, std::less<>> multipliers;
  double default_multiplier = 1.0;
  double direction_change_penalty = 0.0;  // added each time a path turns against edge direction

  [[nodiscard]] double multiplier(std::string_view predicate) const {
    auto it = multipliers.find(predicate);
    return it == multipliers.end() ? default_multiplier : it->second;
  }

  void validate() const {
    auto bad = [](double w) { return !std::isfinite(w) || w < 0.0; };
    if (bad(default_multiplier) || bad(direction_change_penalty))
      throw Error(ErrorKind::Contract, "predicate weights must be finite and >= 0");
    for (const auto& [p, w] : multipliers)
      if (bad(w)) throw Error(ErrorKind::Contract, "weight of predicate '" + p + "' must be finite and >= 0");
  }
};

/// Minimal predicate-weighted path cost between u and v, walking edges in
/// either direction. nullopt when v cannot be reached.
[[nodiscard]] inline std::optional<double> weighted_shortest_path(const SemanticGraph& g, const PredicateWeightScheme& s,
                                                                  NodeId u, NodeId v) {
  s.validate();
  const std::size_t n = g.node_count();
  if (u.index() >= n || v.index() >= n) throw Error(ErrorKind::Lookup, "node handle out of range");
  if (u == v) return 0.0;

  struct Arc {
    std::size_t to;
    double cost;
    bool forward;
  };
  std::vector<std::vector<Arc>> adj(n);
  std::vector<double> pred_mult(g.predicate_count());
  for (std::size_t p = 0; p < pred_mult.size(); ++p) pred_mult[p] = s.multiplier(g.predicate_name(PredicateId{p}));
  for (const auto& e : g.edges()) {
    const double c = pred_mult[e.predicate.index()] * e.weight;
    adj[e.subject.index()].push_back({e.object.index(), c, true});
    adj[e.object.index()].push_back({e.subject.index(), c, false});
  }

  // State = node × direction of the last step (0 start, 1 forward, 2 backward).
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n * 3, inf);
  using Item = std::tuple<double, std::size_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  best[u.index() * 3] = 0.0;
  pq.emplace(0.0, u.index(), 0);
  while (!pq.empty()) {
    auto [d, x, dir] = pq.top();
    pq.pop();
    if (d != best[x * 3 + dir]) continue;
    if (x == v.index()) return d;
    for (const auto& a : adj[x]) {
      const int nd = a.forward ? 1 : 2;
      const double step = a.cost + ((dir != 0 && dir != nd) ? s.direction_change_penalty : 0.0);
      double& b = best[a.to * 3 + nd];
      if (d + step < b) {
        b = d + step;
        pq.emplace(b, a.to, nd);
      }
    }
  }
  return std::nullopt;
}

/// Random walk over directed edges: p(u, k) = w(u, k) / Σ_i w(u, i).
class TransitionModel {
 public:
  struct Step {
    std::size_t to;
    double p;
  };

  /// Edge weights are predicate multiplier × edge weight.
  static TransitionModel from_graph(const SemanticGraph& g, const PredicateWeightScheme& s = {}) {
    s.validate();
    std::vector<std::tuple<std::size_t, std::size_t, double>> arcs;
    for (const auto& e : g.edges())
      arcs.emplace_back(e.subject.index(), e.object.index(), s.multiplier(g.predicate_name(e.predicate)) * e.weight);
    return from_arcs(g.node_count(), arcs);
  }

  /// `arcs` holds (from, to, weight); parallel arcs add up.
  static TransitionModel from_arcs(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& arcs) {
    TransitionModel m;
    m.out_.resize(n);
    std::vector<std::map<std::size_t, double>> w(n);
    for (auto [a, b, x] : arcs) {
      if (a >= n || b >= n) throw Error(ErrorKind::Lookup, "arc endpoint out of range");
      if (!std::isfinite(x) || x < 0.0) throw Error(ErrorKind::Contract, "arc weights must be finite and >= 0");
      if (x > 0.0) w[a][b] += x;
    }
    for (std::size_t a = 0; a < n; ++a) {
      double total = 0.0;
      for (auto [b, x] : w[a]) total += x;
      for (auto [b, x] : w[a]) m.out_[a].push_back({b, x / total});
    }
    return m;
  }

  [[nodiscard]] std::size_t size() const { return out_.size(); }
  [[nodiscard]] const std::vector<Step>& out(std::size_t u) const { return out_.at(u); }

 private:
  std::vector<std::vector<Step>> out_;
};

/// Expected number of steps for a walk from u to first reach v. Throws
/// Divergence when some walk from u can get stuck away from v.
[[nodiscard]] inline double hitting_time(const TransitionModel& tm, std::size_t u, std::size_t v) {
  const std::size_t n = tm.size();
  if (u >= n || v >= n) throw Error(ErrorKind::Lookup, "node index out of range");
  if (u == v) return 0.0;

  // Nodes that can reach v.
  std::vector<std::vector<std::size_t>> rev(n);
  for (std::size_t a = 0; a < n; ++a)
    for (const auto& s : tm.out(a)) rev[s.to].push_back(a);
  std::vector<char> reaches(n, 0);
  std::vector<std::size_t> stack{v};
  reaches[v] = 1;
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto y : rev[x])
      if (!reaches[y]) { reaches[y] = 1; stack.push_back(y); }
  }

  // Transient states: reachable from u before hitting v.
  std::vector<long> slot(n, -1);
  std::vector<std::size_t> states;
  stack.assign(1, u);
  slot[u] = 0;
  states.push_back(u);
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    if (!reaches[x])
      throw Error(ErrorKind::Divergence, "a walk from node " + std::to_string(u) + " can end where node " +
                                             std::to_string(v) + " is unreachable");
    for (const auto& s : tm.out(x)) {
      if (s.to == v || slot[s.to] >= 0) continue;
      slot[s.to] = static_cast<long>(states.size());
      states.push_back(s.to);
      stack.push_back(s.to);
    }
  }

  // (I − P) h = 1 over the transient states.
  const auto m = static_cast<Eigen::Index>(states.size());
  std::vector<Eigen::Triplet<double>> trips;
  for (Eigen::Index i = 0; i < m; ++i) {
    trips.emplace_back(i, i, 1.0);
    for (const auto& s : tm.out(states[static_cast<std::size_t>(i)]))
      if (s.to != v) trips.emplace_back(i, slot[s.to], -s.p);
  }
  Eigen::SparseMatrix<double> a(m, m);
  a.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw Error(ErrorKind::Divergence, "hitting-time system is singular");
  Eigen::VectorXd h = lu.solve(Eigen::VectorXd::Ones(m));
  if (lu.info() != Eigen::Success || !std::isfinite(h[0])) throw Error(ErrorKind::Divergence, "hitting-time solve failed");
  return h[0];
}

[[nodiscard]] inline double commute_time(const TransitionModel& tm, std::size_t u, std::size_t v) {
  return hitting_time(tm, u, v) + hitting_time(tm, v, u);
}

struct SimRankResult {
  std::size_t n = 0;
  std::vector<double> scores;  // row-major n × n
  std::vector<double> deltas;  // max |s_k − s_{k−1}| per iteration
  [[nodiscard]] double at(std::size_t a, std::size_t b) const { return scores.at(a * n + b); }
};

/// Iterates s(u, u) = 1, s(u, v) = decay / (|N(u)| |N(v)|) Σ s(a, b) over
/// in-neighbours a of u and b of v, starting from the identity. Stops after
/// `iterations` rounds or once an update moves no score by more than
/// `tolerance`.
[[nodiscard]] inline SimRankResult simrank(const std::vector<std::vector<std::size_t>>& in_neighbors, double decay,
                                           std::size_t iterations, double tolerance = 0.0) {
  if (!(decay > 0.0 && decay < 1.0)) throw Error(ErrorKind::Contract, "SimRank decay must lie in (0, 1)");
  if (iterations == 0) throw Error(ErrorKind::Contract, "SimRank needs at least one iteration");
  const std::size_t n = in_neighbors.size();
  if (n == 0) throw Error(ErrorKind::EmptyGraph, "SimRank on an empty graph");
  SimRankResult r;
  r.n = n;
  r.scores.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) r.scores[i * n + i] = 1.0;
  std::vector<double> next(n * n), partial(n * n);
  for (std::size_t it = 0; it < iterations; ++it) {
    // partial[u][y] = Σ_{a ∈ N(u)} s(a, y)
    std::fill(partial.begin(), partial.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u)
      for (auto a : in_neighbors[u])
        for (std::size_t y = 0; y < n; ++y) partial[u * n + y] += r.scores[a * n + y];
    double delta = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        double s = 1.0;
        if (u != v) {
          s = 0.0;
          if (!in_neighbors[u].empty() && !in_neighbors[v].empty()) {
            double sum = 0.0;
            for (auto b : in_neighbors[v]) sum += partial[u * n + b];
            s = decay * sum / static_cast<double>(in_neighbors[u].size() * in_neighbors[v].size());
          }
        }
        next[u * n + v] = s;
        delta = std::max(delta, std::abs(s - r.scores[u * n + v]));
      }
    }
    r.scores.swap(next);
    r.deltas.push_back(delta);
    if (delta <= tolerance) break;
  }
  return r;
}

/// SimRank over the directed edges of `g`, all predicates alike.
[[nodiscard]] inline SimRankResult simrank(const SemanticGraph& g, double decay = 0.8, std::size_t iterations = 100,
                                           double tolerance = 1e-9) {
  std::vector<std::vector<std::size_t>> in(g.node_count());
  for (const auto& e : g.edges()) in[e.object.index()].push_back(e.subject.index());
  for (auto& l : in) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return simrank(in, decay, iterations, tolerance);
}

}  // namespace smx

#endif  // SMX_RELATEDNESS_HPP
