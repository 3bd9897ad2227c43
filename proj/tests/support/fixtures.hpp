#ifndef SMX_TESTS_FIXTURES_HPP
#define SMX_TESTS_FIXTURES_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "smx/smx.hpp"

namespace fixture {

inline std::string path(const std::string& rel) { return std::string(SMX_TEST_DATA) + "/" + rel; }

inline smx::SemanticGraph graph_from_string(const std::string& text) {
  std::istringstream in(text);
  return smx::parse_graph(in);
}

inline smx::SemanticGraph load_graph(const std::string& rel) {
  std::ifstream in(path(rel));
  if (!in) throw std::runtime_error("missing fixture " + rel);
  return smx::parse_graph(in);
}

inline smx::TaxonomyView toy_a() { return smx::taxonomic_reduction(load_graph("toyA.tsv")); }

inline smx::AnnotationSet annotations(const smx::TaxonomyView& t, const std::string& text) {
  std::istringstream in(text);
  return smx::parse_annotations(in, t);
}

}  // namespace fixture

#endif  // SMX_TESTS_FIXTURES_HPP
