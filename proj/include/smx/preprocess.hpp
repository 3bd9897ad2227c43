#ifndef SMX_PREPROCESS_HPP
#define SMX_PREPROCESS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "smx/graph.hpp"
#include "smx/ingest.hpp"
#include "smx/taxonomy.hpp"

namespace smx {

struct ReductionReport {
  std::vector<TripleRecord> removed_edges;
  std::map<std::string, std::vector<ClassId>> removed_annotations;
  std::optional<std::string> inserted_root;
};

/// G_T: the classes of `g` and its subClassOf edges. Several roots get a
/// virtual `__root__` above them.
[[nodiscard]] inline TaxonomyView taxonomic_reduction(const SemanticGraph& g) {
  std::vector<std::string> names;
  std::vector<std::size_t> slot(g.node_count(), 0);
  for (auto n : g.classes()) {
    slot[n.index()] = names.size();
    names.emplace_back(g.name(n));
  }
  TaxonomyView::EdgeList edges;
  for (const auto& e : g.edges())
    if (e.predicate == SemanticGraph::subclass_of())
      edges.emplace_back(ClassId{slot[e.subject.index()]}, ClassId{slot[e.object.index()]});
  return TaxonomyView::build(std::move(names), edges);
}

/// Drops every subClassOf edge (u, v) for which a path of length >= 2 from u
/// to v exists. Reachability, and therefore every closure, is unchanged.
[[nodiscard]] inline std::pair<TaxonomyView, ReductionReport> transitive_reduction(const TaxonomyView& t) {
  ReductionReport report;
  if (auto r = t.inserted_root()) report.inserted_root = std::string(t.name(*r));

  const auto redundant = t.redundant_edges();
  if (redundant.empty()) return {t, std::move(report)};

  const std::set<std::pair<ClassId, ClassId>> drop(redundant.begin(), redundant.end());
  TaxonomyView::EdgeList kept;
  for (const auto& e : t.edges())
    if (!drop.contains(e)) kept.push_back(e);
  for (auto [c, p] : redundant)
    report.removed_edges.push_back({std::string(t.name(c)), std::string(kSubClassOf), std::string(t.name(p)), std::nullopt});
  return {t.with_edges(kept), std::move(report)};
}

/// True path rule cleaning: removes every class that strictly subsumes
/// another class of the same instance.
[[nodiscard]] inline std::pair<AnnotationSet, ReductionReport> reduce_annotations(const TaxonomyView& t, const AnnotationSet& a) {
  AnnotationSet out;
  out.warnings = a.warnings;
  ReductionReport report;
  if (auto r = t.inserted_root()) report.inserted_root = std::string(t.name(*r));
  for (const auto& [instance, classes] : a.entries) {
    std::vector<ClassId> kept, removed;
    for (auto c : classes) {
      const bool implied = std::any_of(classes.begin(), classes.end(),
                                       [&](ClassId d) { return d != c && t.subsumes(c, d); });
      (implied ? removed : kept).push_back(c);
    }
    out.entries.emplace(instance, std::move(kept));
    if (!removed.empty()) report.removed_annotations.emplace(instance, std::move(removed));
  }
  return {std::move(out), std::move(report)};
}

/// Replaces every class set by the union of the inclusive ancestor sets of
/// its members.
[[nodiscard]] inline AnnotationSet expand_annotations(const TaxonomyView& t, const AnnotationSet& a) {
  AnnotationSet out;
  out.warnings = a.warnings;
  for (const auto& [instance, classes] : a.entries) {
    std::vector<ClassId> closure;
    for (auto c : classes) {
      auto anc = t.ancestors(c);
      closure.insert(closure.end(), anc.begin(), anc.end());
    }
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    out.entries.emplace(instance, std::move(closure));
  }
  return out;
}

/// Writes `g` minus the subClassOf triples listed in the report.
inline void write_reduced_graph(std::ostream& out, const SemanticGraph& g, const ReductionReport& report) {
  std::set<std::pair<std::string, std::string>> dropped;
  for (const auto& r : report.removed_edges) dropped.emplace(r.subject, r.object);
  for (const auto& e : g.edges()) {
    if (e.predicate == SemanticGraph::subclass_of() &&
        dropped.contains({std::string(g.name(e.subject)), std::string(g.name(e.object))}))
      continue;
    out << g.name(e.subject) << '\t' << g.predicate_name(e.predicate) << '\t' << g.name(e.object);
    if (g.has_explicit_weights()) out << '\t' << format_number(e.weight);
    out << '\n';
  }
}

/// One removed triple per line; the inserted root, if any, as a comment.
inline void write_reduction_report(std::ostream& out, const TaxonomyView& t, const ReductionReport& report) {
  if (report.inserted_root) out << "# inserted_root\t" << *report.inserted_root << '\n';
  for (const auto& r : report.removed_edges) out << r.subject << '\t' << r.predicate << '\t' << r.object << '\n';
  for (const auto& [instance, classes] : report.removed_annotations)
    for (auto c : classes) out << instance << '\t' << kIsA << '\t' << t.name(c) << '\n';
}

}  // namespace smx

#endif  // SMX_PREPROCESS_HPP
