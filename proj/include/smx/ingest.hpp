#ifndef SMX_INGEST_HPP
#define SMX_INGEST_HPP

// Readers and writers for the toolkit's tab-separated formats.
//
//   graph       subject<TAB>predicate<TAB>object[<TAB>weight]
//   annotations instance<TAB>class1,class2,...
//   benchmark   wordA<TAB>wordB<TAB>rating
//   mapping     word<TAB>classId[;classId...]
//   pairs       idA<TAB>idB[<TAB>...]            (extra columns ignored)
//   weights     predicate<TAB>multiplier
//
// UTF-8, one record per line, '#' starts a comment line, blank lines are
// skipped, a trailing '\r' is tolerated.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "smx/error.hpp"
#include "smx/graph.hpp"
#include "smx/taxonomy.hpp"

namespace smx {

/// Instance identifier -> sorted, duplicate-free class set.
struct AnnotationSet {
  std::map<std::string, std::vector<ClassId>> entries;
  std::size_t warnings = 0;  // duplicate instance lines merged by union
};

/// Word -> non-empty sorted class set.
struct WordMapping {
  std::map<std::string, std::vector<ClassId>> entries;
  std::size_t warnings = 0;
};

struct RatedPair {
  std::string first;
  std::string second;
  double rating = 0.0;
  std::size_t line = 0;  // source line, for diagnostics
};

struct RatedPairSet {
  std::string name;
  double scale_min = 0.0;  // observed rating bounds
  double scale_max = 0.0;
  std::vector<RatedPair> pairs;
};

namespace detail {

/// Calls `fn(line_number, fields)` for every content line.
template <typename Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  std::vector<std::string_view> fields;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fields.clear();
    std::string_view rest{line};
    for (;;) {
      auto tab = rest.find('\t');
      fields.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    fn(number, std::span<const std::string_view>{fields});
  }
}

inline std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto pos = s.find(sep);
    out.push_back(s.substr(0, pos));
    if (pos == std::string_view::npos) break;
    s.remove_prefix(pos + 1);
  }
  return out;
}

inline std::vector<ClassId> resolve_classes(const TaxonomyView& t, std::string_view list, char sep, std::size_t line) {
  std::vector<ClassId> out;
  for (auto id : split(list, sep)) {
    if (id.empty()) throw ParseError(ErrorKind::Parse, line, "empty class identifier");
    auto c = t.find(id);
    if (!c) throw ParseError(ErrorKind::Resolution, line, "unknown class identifier '" + std::string(id) + "'");
    out.push_back(*c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline void merge_into(std::vector<ClassId>& dst, const std::vector<ClassId>& src) {
  std::vector<ClassId> merged;
  std::set_union(dst.begin(), dst.end(), src.begin(), src.end(), std::back_inserter(merged));
  dst = std::move(merged);
}

}  // namespace detail

/// Shortest text that reads back to the same double.
[[nodiscard]] inline std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), ptr};
}

[[nodiscard]] inline SemanticGraph parse_graph(std::istream& in) {
  GraphBuilder builder;
  detail::for_each_record(in, [&](std::size_t line, std::span<const std::string_view> f) {
    if (f.size() != 3 && f.size() != 4)
      throw ParseError(ErrorKind::Parse, line, "expected 3 or 4 tab-separated fields, got " + std::to_string(f.size()));
    TripleRecord t{std::string(f[0]), std::string(f[1]), std::string(f[2]), std::nullopt};
    if (f.size() == 4) {
      auto w = detail::parse_number(f[3]);
      if (!w) throw ParseError(ErrorKind::Parse, line, "non-numeric weight '" + std::string(f[3]) + "'");
      t.weight = *w;
    }
    builder.add(t, line);
  });
  return std::move(builder).build();
}

inline void write_graph(std::ostream& out, const SemanticGraph& g) {
  for (const auto& e : g.edges()) {
    out << g.name(e.subject) << '\t' << g.predicate_name(e.predicate) << '\t' << g.name(e.object);
    if (g.has_explicit_weights()) out << '\t' << format_number(e.weight);
    out << '\n';
  }
}

[[nodiscard]] inline AnnotationSet parse_annotations(std::istream& in, const TaxonomyView& t) {
  AnnotationSet set;
  detail::for_each_record(in, [&](std::size_t line, std::span<const std::string_view> f) {
    if (f.size() != 2) throw ParseError(ErrorKind::Parse, line, "expected instance<TAB>class1,class2,...");
    if (f[0].empty()) throw ParseError(ErrorKind::Parse, line, "empty instance identifier");
    auto classes = detail::resolve_classes(t, f[1], ',', line);
    auto [it, inserted] = set.entries.try_emplace(std::string(f[0]), classes);
    if (!inserted) {
      detail::merge_into(it->second, classes);
      ++set.warnings;
    }
  });
  return set;
}

inline void write_annotations(std::ostream& out, const TaxonomyView& t, const AnnotationSet& a) {
  for (const auto& [instance, classes] : a.entries) {
    out << instance << '\t';
    for (std::size_t i = 0; i < classes.size(); ++i) out << (i ? "," : "") << t.name(classes[i]);
    out << '\n';
  }
}

/// Instance annotations carried by the isA edges of a graph.
[[nodiscard]] inline AnnotationSet annotations_from_graph(const SemanticGraph& g, const TaxonomyView& t) {
  AnnotationSet set;
  for (const auto& e : g.edges()) {
    if (e.predicate != SemanticGraph::is_a()) continue;
    auto& classes = set.entries[std::string(g.name(e.subject))];
    detail::merge_into(classes, {t.at(g.name(e.object))});
  }
  return set;
}

[[nodiscard]] inline RatedPairSet parse_rated_pairs(std::istream& in, std::string name = {}) {
  RatedPairSet set;
  set.name = std::move(name);
  detail::for_each_record(in, [&](std::size_t line, std::span<const std::string_view> f) {
    if (f.size() != 3) throw ParseError(ErrorKind::Parse, line, "expected wordA<TAB>wordB<TAB>rating");
    if (f[0].empty() || f[1].empty()) throw ParseError(ErrorKind::Parse, line, "empty word");
    auto r = detail::parse_number(f[2]);
    if (!r || !std::isfinite(*r)) throw ParseError(ErrorKind::Parse, line, "non-numeric rating '" + std::string(f[2]) + "'");
    set.pairs.push_back({std::string(f[0]), std::string(f[1]), *r, line});
  });
  if (set.pairs.empty()) throw Error(ErrorKind::Parse, "benchmark file without any rated pair");
  auto [lo, hi] = std::minmax_element(set.pairs.begin(), set.pairs.end(),
                                      [](const RatedPair& a, const RatedPair& b) { return a.rating < b.rating; });
  set.scale_min = lo->rating;
  set.scale_max = hi->rating;
  return set;
}

[[nodiscard]] inline WordMapping parse_word_mapping(std::istream& in, const TaxonomyView& t) {
  WordMapping m;
  detail::for_each_record(in, [&](std::size_t line, std::span<const std::string_view> f) {
    if (f.size() != 2) throw ParseError(ErrorKind::Parse, line, "expected word<TAB>classId[;classId...]");
    if (f[0].empty()) throw ParseError(ErrorKind::Parse, line, "empty word");
    auto classes = detail::resolve_classes(t, f[1], ';', line);
    auto [it, inserted] = m.entries.try_emplace(std::string(f[0]), classes);
    if (!inserted) {
      detail::merge_into(it->second, classes);
      ++m.warnings;
    }
  });
  return m;
}

/// First two columns of every line.
[[nodiscard]] inline std::vector<std::pair<std::string, std::string>> parse_id_pairs(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  detail::for_each_record(in, [&](std::size_t line, std::span<const std::string_view> f) {
    if (f.size() < 2 || f[0].empty() || f[1].empty())
      throw ParseError(ErrorKind::Parse, line, "expected idA<TAB>idB");
    out.emplace_back(std::string(f[0]), std::string(f[1]));
  });
  return out;
}

[[nodiscard]] inline std::map<std::string, double> parse_weight_table(std::istream& in) {
  std::map<std::string, double> out;
  detail::for_each_record(in, [&](std::size_t line, std::span<const std::string_view> f) {
    if (f.size() != 2 || f[0].empty()) throw ParseError(ErrorKind::Parse, line, "expected predicate<TAB>weight");
    auto w = detail::parse_number(f[1]);
    if (!w || !std::isfinite(*w) || *w < 0.0)
      throw ParseError(ErrorKind::Parse, line, "weight must be a finite non-negative number");
    out[std::string(f[0])] = *w;
  });
  return out;
}

}  // namespace smx

#endif  // SMX_INGEST_HPP
