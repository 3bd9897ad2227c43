#ifndef SMX_GRAPH_HPP
#define SMX_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "smx/error.hpp"
#include "smx/ids.hpp"

namespace smx {

inline constexpr std::string_view kSubClassOf = "subClassOf";
inline constexpr std::string_view kIsA = "isA";
inline constexpr std::string_view kVirtualRoot = "__root__";

enum class NodeKind : std::uint8_t { Class, Instance };

struct Edge {
  NodeId subject;
  PredicateId predicate;
  NodeId object;
  double weight = 1.0;
};

/// One statement as read from a triple file.
struct TripleRecord {
  std::string subject;
  std::string predicate;
  std::string object;
  std::optional<double> weight;
};

class GraphBuilder;

/// Immutable multi-relational directed graph. Classes are the nodes used by
/// subClassOf (either end) or as the object of isA; instances are subjects of
/// isA. Nodes touched only by free-form predicates are treated as instances.
class SemanticGraph {
 public:
  [[nodiscard]] std::size_t node_count() const { return names_.size(); }
  [[nodiscard]] std::string_view name(NodeId n) const { return names_.at(n.index()); }
  [[nodiscard]] NodeKind kind(NodeId n) const { return kinds_.at(n.index()); }

  [[nodiscard]] std::optional<NodeId> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] NodeId at(std::string_view id) const {
    if (auto n = find(id)) return *n;
    throw Error(ErrorKind::Lookup, "unknown node '" + std::string(id) + "'");
  }

  [[nodiscard]] std::span<const NodeId> classes() const { return classes_; }
  [[nodiscard]] std::span<const NodeId> instances() const { return instances_; }

  [[nodiscard]] std::size_t predicate_count() const { return predicates_.size(); }
  [[nodiscard]] std::string_view predicate_name(PredicateId p) const {
    return predicates_.at(p.index());
  }
  [[nodiscard]] std::optional<PredicateId> find_predicate(std::string_view p) const {
    for (std::size_t i = 0; i < predicates_.size(); ++i)
      if (predicates_[i] == p) return PredicateId{i};
    return std::nullopt;
  }
  [[nodiscard]] static constexpr PredicateId subclass_of() { return PredicateId{0U}; }
  [[nodiscard]] static constexpr PredicateId is_a() { return PredicateId{1U}; }

  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  /// True when at least one input line carried an explicit weight; edges
  /// without one weigh 1.
  [[nodiscard]] bool has_explicit_weights() const { return explicit_weights_; }

 private:
  friend class GraphBuilder;

  std::vector<std::string> names_;
  std::vector<NodeKind> kinds_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<NodeId> classes_;
  std::vector<NodeId> instances_;
  std::vector<std::string> predicates_;
  std::vector<Edge> edges_;
  bool explicit_weights_ = false;
};

/// Accumulates triples and classifies nodes once all statements are known, so
/// the result does not depend on line order.
class GraphBuilder {
 public:
  GraphBuilder() {
    predicates_.emplace_back(kSubClassOf);
    predicates_.emplace_back(kIsA);
  }

  /// `line` is only used for diagnostics (0 when not from a file).
  void add(const TripleRecord& t, std::size_t line = 0) {
    check_token(t.subject, line, "subject");
    check_token(t.predicate, line, "predicate");
    check_token(t.object, line, "object");
    for (const auto* id : {&t.subject, &t.object}) {
      if (*id == kSubClassOf || *id == kIsA || *id == kVirtualRoot)
        fail(ErrorKind::Parse, line, "reserved token '" + *id + "' used as a node identifier");
    }
    if (t.predicate == kVirtualRoot)
      fail(ErrorKind::Parse, line, "reserved token '__root__' used as a predicate");
    if (t.weight && (!std::isfinite(*t.weight) || *t.weight < 0.0))
      fail(ErrorKind::Parse, line, "edge weight must be finite and non-negative");

    const auto s = intern(t.subject, line);
    const auto o = intern(t.object, line);
    const auto p = intern_predicate(t.predicate);
    const double w = t.weight.value_or(1.0);
    if (t.weight) explicit_weights_ = true;

    auto key = std::make_tuple(s, p, o);
    if (auto it = seen_.find(key); it != seen_.end()) {
      if (edges_[it->second].weight != w)
        fail(ErrorKind::Parse, line, "duplicate triple with a different weight");
      return;
    }
    seen_.emplace(key, edges_.size());
    edges_.push_back(Edge{NodeId{s}, PredicateId{p}, NodeId{o}, w});
    lines_.push_back(line);
  }

  [[nodiscard]] SemanticGraph build() && {
    const std::size_t n = names_.size();
    std::vector<std::uint8_t> as_class(n, 0), as_instance(n, 0);
    std::vector<std::size_t> first_line(n, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (e.predicate == SemanticGraph::subclass_of()) {
        as_class[e.subject.index()] = as_class[e.object.index()] = 1;
      } else if (e.predicate == SemanticGraph::is_a()) {
        as_instance[e.subject.index()] = 1;
        as_class[e.object.index()] = 1;
        if (first_line[e.subject.index()] == 0) first_line[e.subject.index()] = lines_[i];
      }
    }

    SemanticGraph g;
    g.kinds_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (as_class[i] && as_instance[i])
        fail(ErrorKind::Classification, first_line[i],
             "node '" + names_[i] + "' is used both as a class and as an instance");
      for (const auto& p : predicates_)
        if (p == names_[i])
          throw Error(ErrorKind::Classification,
                      "identifier '" + names_[i] + "' is used both as a node and as a predicate");
      g.kinds_[i] = as_class[i] ? NodeKind::Class : NodeKind::Instance;
      (as_class[i] ? g.classes_ : g.instances_).push_back(NodeId{i});
    }
    if (g.classes_.empty()) throw Error(ErrorKind::EmptyGraph, "a graph must contain at least one class");

    g.names_ = std::move(names_);
    g.index_ = std::move(index_);
    g.predicates_ = std::move(predicates_);
    g.edges_ = std::move(edges_);
    g.explicit_weights_ = explicit_weights_;
    return g;
  }

 private:
  [[noreturn]] static void fail(ErrorKind k, std::size_t line, const std::string& msg) {
    if (line == 0) throw Error(k, msg);
    throw ParseError(k, line, msg);
  }

  static void check_token(const std::string& s, std::size_t line, const char* what) {
    if (s.empty()) fail(ErrorKind::Parse, line, std::string("empty ") + what);
  }

  std::uint32_t intern(const std::string& id, std::size_t) {
    auto [it, inserted] = index_.try_emplace(id, NodeId{names_.size()});
    if (inserted) names_.push_back(id);
    return it->second.value;
  }

  std::uint32_t intern_predicate(const std::string& p) {
    for (std::size_t i = 0; i < predicates_.size(); ++i)
      if (predicates_[i] == p) return static_cast<std::uint32_t>(i);
    predicates_.push_back(p);
    return static_cast<std::uint32_t>(predicates_.size() - 1);
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<std::string> predicates_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> lines_;
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::size_t> seen_;
  bool explicit_weights_ = false;
};

}  // namespace smx

#endif  // SMX_GRAPH_HPP
