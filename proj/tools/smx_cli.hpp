#ifndef SMX_TOOLS_SMX_CLI_HPP
#define SMX_TOOLS_SMX_CLI_HPP

// Command-line front end. run_cli() is the whole program; main() only binds
// it to the process streams, so tests drive it in-process.

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "smx/smx.hpp"

namespace smx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Usage problem detected after argument parsing (bad selector value, missing
/// companion option).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t threads = default_thread_count();
  std::string graph;
  std::string annotations;
  std::string pairs;
  std::string out;
  std::string measure;
  std::string ic = "seco";
  bool log2 = false;
  bool smooth = false;
  bool reduce = false;
  // preprocess
  std::string report;
  std::string annotations_out;
  // ic
  std::string estimator;
  // abstract
  std::string form;
  std::string theta;
  std::string commonality = "mica";
  // rel
  std::string method;
  std::string weights;
  double decay = 0.8;
  std::size_t iterations = 100;
  double turn_penalty = 0.0;
  // bench
  std::string mapping;
  std::string dataset;
  std::string measures;
  std::string known;
};

namespace detail {

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Lookup, "cannot open '" + path + "'");
  return in;
}

/// Wraps a parse failure with the file it came from.
template <typename F>
auto load(const std::string& path, F&& f) {
  auto in = open_in(path);
  try {
    return f(in);
  } catch (const ParseError& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

/// Destination stream: the --out file when given, else standard output. The
/// file is written only after the command succeeded.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_{path}, fallback_{&fallback} {}
  std::ostream& stream() { return path_.empty() ? *fallback_ : buffer_; }
  void commit() {
    if (path_.empty()) return;
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw Error(ErrorKind::Lookup, "cannot write '" + path_ + "'");
    f << buffer_.str();
  }

 private:
  std::string path_;
  std::ostream* fallback_;
  std::ostringstream buffer_;
};

struct Loaded {
  SemanticGraph graph;
  TaxonomyView taxonomy;
};

inline Loaded load_graph(const Options& o, bool reduce) {
  auto g = load(o.graph, [](std::istream& in) { return parse_graph(in); });
  auto t = taxonomic_reduction(g);
  if (reduce) t = transitive_reduction(t).first;
  return {std::move(g), std::move(t)};
}

inline AnnotationSet load_annotations(const Options& o, const Loaded& l) {
  if (o.annotations.empty()) return annotations_from_graph(l.graph, l.taxonomy);
  return load(o.annotations, [&](std::istream& in) { return parse_annotations(in, l.taxonomy); });
}

inline ThetaOptions theta_options(const Options& o) {
  ThetaOptions opt;
  opt.log_base = o.log2 ? LogBase::Two : LogBase::Natural;
  opt.add_one_smoothing = o.smooth;
  return opt;
}

/// Owns the estimator and the usage table it may point to.
struct ThetaHolder {
  std::unique_ptr<ClassUsage> usage;
  std::unique_ptr<ThetaEstimator> theta;
};

inline ThetaHolder make_theta(const ThetaChoice& c, const Options& o, const Loaded& l) {
  ThetaHolder h;
  if (is_extrinsic(c.kind)) h.usage = std::make_unique<ClassUsage>(class_usage(l.taxonomy, load_annotations(o, l)));
  h.theta = std::make_unique<ThetaEstimator>(ThetaEstimator::make(c.kind, l.taxonomy, c.options, h.usage.get()));
  return h;
}

inline ClassId class_at(const TaxonomyView& t, const std::string& id, const std::string& file) {
  auto c = t.find(id);
  if (!c) throw Error(ErrorKind::Resolution, file + ": unknown class '" + id + "'");
  return *c;
}

inline std::vector<std::pair<std::string, std::string>> load_pairs(const std::string& path) {
  return load(path, [](std::istream& in) { return parse_id_pairs(in); });
}

/// Bindings for a pairwise selector, with `ic=` overriding the default θ.
struct PairwiseSetup {
  PairwiseMeasureSpec spec;
  ThetaHolder theta;
  std::unique_ptr<ClassUsage> usage;
  std::unique_ptr<PairwiseEvaluator> eval;
};

inline std::unique_ptr<PairwiseSetup> setup_pairwise(const Selector& s, const Options& o, const Loaded& l) {
  auto p = std::make_unique<PairwiseSetup>();
  p->spec = pairwise_spec_from(s);
  PairwiseBindings b;
  if (needs_theta(p->spec.kind)) {
    p->theta = make_theta(theta_from(s.get("ic").value_or(o.ic), theta_options(o)), o, l);
    b.theta = p->theta.theta.get();
  }
  if (needs_usage(p->spec.kind)) {
    p->usage = std::make_unique<ClassUsage>(class_usage(l.taxonomy, load_annotations(o, l)));
    b.usage = p->usage.get();
  }
  p->eval = std::make_unique<PairwiseEvaluator>(p->spec, l.taxonomy, b);
  return p;
}

// ---------------------------------------------------------------------------

inline void cmd_preprocess(const Options& o, std::ostream& out, std::ostream& err) {
  auto g = load(o.graph, [](std::istream& in) { return parse_graph(in); });
  auto t = taxonomic_reduction(g);
  auto [reduced, report] = transitive_reduction(t);
  std::optional<AnnotationSet> cleaned;
  if (!o.annotations.empty() || !o.annotations_out.empty()) {
    Loaded l{g, reduced};
    auto a = load_annotations(o, l);
    auto [c, r] = reduce_annotations(reduced, a);
    report.removed_annotations = std::move(r.removed_annotations);
    cleaned = std::move(c);
    if (a.warnings) err << "warning: " << a.warnings << " duplicate annotation line(s) merged\n";
  }
  Sink sink(o.out, out);
  write_reduced_graph(sink.stream(), g, report);
  sink.commit();
  if (!o.report.empty()) {
    Sink r(o.report, out);
    write_reduction_report(r.stream(), reduced, report);
    r.commit();
  }
  if (!o.annotations_out.empty() && cleaned) {
    Sink a(o.annotations_out, out);
    write_annotations(a.stream(), reduced, *cleaned);
    a.commit();
  }
  err << "removed " << report.removed_edges.size() << " redundant subClassOf edge(s)";
  if (report.inserted_root) err << "; inserted virtual root " << *report.inserted_root;
  err << '\n';
}

inline void cmd_ic(const Options& o, std::ostream& out, std::ostream&) {
  const auto l = load_graph(o, false);
  auto h = make_theta(theta_from(o.estimator, theta_options(o)), o, l);
  Sink sink(o.out, out);
  for (std::size_t i = 0; i < l.taxonomy.size(); ++i) {
    const ClassId c{i};
    sink.stream() << l.taxonomy.name(c) << '\t';
    try {
      sink.stream() << format_number((*h.theta)(c)) << '\n';
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InfiniteIC) throw;
      sink.stream() << "inf\n";
    }
  }
  sink.commit();
}

inline void cmd_sim(const Options& o, std::ostream& out, std::ostream&) {
  const Selector s = parse_selector(o.measure);
  (void)pairwise_spec_from(s);  // reject unknown names before touching files
  const auto l = load_graph(o, o.reduce);
  auto setup = setup_pairwise(s, o, l);
  const auto pairs = load_pairs(o.pairs);
  std::vector<std::pair<ClassId, ClassId>> ids;
  for (const auto& [a, b] : pairs) ids.emplace_back(class_at(l.taxonomy, a, o.pairs), class_at(l.taxonomy, b, o.pairs));
  std::vector<double> scores(ids.size());
  parallel_for(ids.size(), o.threads, [&](std::size_t i) { scores[i] = (*setup->eval)(ids[i].first, ids[i].second).value; });
  Sink sink(o.out, out);
  for (std::size_t i = 0; i < ids.size(); ++i)
    sink.stream() << pairs[i].first << '\t' << pairs[i].second << '\t' << format_number(scores[i]) << '\n';
  sink.commit();
}

inline void cmd_groupsim(const Options& o, std::ostream& out, std::ostream&) {
  Selector inner;
  const auto spec = groupwise_spec_from(o.measure, &inner);
  const auto l = load_graph(o, o.reduce);
  auto annotations = reduce_annotations(l.taxonomy, load_annotations(o, l)).first;
  PairwiseBindings b;
  ThetaHolder theta;
  std::unique_ptr<ClassUsage> usage;
  const bool wants_theta = spec.kind == GroupwiseKind::SimGIC ||
                           (spec.kind == GroupwiseKind::Aggregate && needs_theta(spec.inner.kind));
  if (wants_theta) {
    theta = make_theta(theta_from(inner.get("ic").value_or(o.ic), theta_options(o)), o, l);
    b.theta = theta.theta.get();
  }
  if (spec.kind == GroupwiseKind::Aggregate && needs_usage(spec.inner.kind)) {
    usage = std::make_unique<ClassUsage>(class_usage(l.taxonomy, annotations));
    b.usage = usage.get();
  }
  GroupwiseEvaluator eval(spec, l.taxonomy, b);
  const auto pairs = load_pairs(o.pairs);
  auto classes_of = [&](const std::string& id) -> const std::vector<ClassId>& {
    auto it = annotations.entries.find(id);
    if (it == annotations.entries.end()) throw Error(ErrorKind::Lookup, o.pairs + ": instance '" + id + "' has no annotations");
    return it->second;
  };
  std::vector<double> scores(pairs.size());
  for (const auto& [a, bb] : pairs) {
    classes_of(a);
    classes_of(bb);
  }
  parallel_for(pairs.size(), o.threads,
               [&](std::size_t i) { scores[i] = eval(classes_of(pairs[i].first), classes_of(pairs[i].second)).value; });
  Sink sink(o.out, out);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    sink.stream() << pairs[i].first << '\t' << pairs[i].second << '\t' << format_number(scores[i]) << '\n';
  sink.commit();
}

inline void cmd_abstract(const Options& o, std::ostream& out, std::ostream&) {
  auto choice = abstract_form_from(o.form);
  if (o.commonality == "shared") choice.form.commonality = Commonality::SharedAncestorSalience;
  else if (o.commonality != "mica") throw UsageError("--commonality must be mica or shared");
  ThetaChoice tc = o.theta.empty() && choice.theta ? ThetaChoice{*choice.theta, theta_options(o)}
                                                   : theta_from(o.theta.empty() ? o.ic : o.theta, theta_options(o));
  const auto l = load_graph(o, o.reduce);
  auto h = make_theta(tc, o, l);
  AbstractEvaluator eval(choice.form, *h.theta);
  const auto pairs = load_pairs(o.pairs);
  Sink sink(o.out, out);
  for (const auto& [a, b] : pairs) {
    auto mv = eval(class_at(l.taxonomy, a, o.pairs), class_at(l.taxonomy, b, o.pairs));
    sink.stream() << a << '\t' << b << '\t' << format_number(mv.value) << '\n';
  }
  sink.commit();
}

inline void cmd_rel(const Options& o, std::ostream& out, std::ostream&) {
  if (o.method != "wsp" && o.method != "hitting" && o.method != "commute" && o.method != "simrank")
    throw UsageError("unknown method '" + o.method + "'; valid methods: wsp, hitting, commute, simrank");
  auto g = load(o.graph, [](std::istream& in) { return parse_graph(in); });
  PredicateWeightScheme scheme;
  if (!o.weights.empty())
    for (auto& [p, w] : load(o.weights, [](std::istream& in) { return parse_weight_table(in); })) scheme.multipliers[p] = w;
  scheme.direction_change_penalty = o.turn_penalty;
  const auto pairs = load_pairs(o.pairs);
  auto node = [&](const std::string& id) {
    auto n = g.find(id);
    if (!n) throw Error(ErrorKind::Lookup, o.pairs + ": unknown node '" + id + "'");
    return *n;
  };
  Sink sink(o.out, out);
  std::optional<TransitionModel> tm;
  std::optional<SimRankResult> sr;
  if (o.method == "hitting" || o.method == "commute") tm = TransitionModel::from_graph(g, scheme);
  if (o.method == "simrank") sr = simrank(g, o.decay, o.iterations);
  for (const auto& [a, b] : pairs) {
    const NodeId u = node(a), v = node(b);
    std::string value;
    if (o.method == "wsp") {
      auto d = weighted_shortest_path(g, scheme, u, v);
      value = d ? format_number(*d) : "NA";
    } else if (o.method == "hitting") {
      value = format_number(hitting_time(*tm, u.index(), v.index()));
    } else if (o.method == "commute") {
      value = format_number(commute_time(*tm, u.index(), v.index()));
    } else {
      value = format_number(sr->at(u.index(), v.index()));
    }
    sink.stream() << a << '\t' << b << '\t' << value << '\n';
  }
  sink.commit();
}

inline void cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  const auto selectors = parse_selector_list(o.measures);
  for (const auto& s : selectors) (void)pairwise_spec_from(s);
  std::optional<KnownDataset> known;
  if (!o.known.empty()) {
    known = known_dataset_from_name(o.known);
    if (!known) throw UsageError("unknown dataset kind '" + o.known + "'; valid: rg65, mc30, ws353, mturk771");
  }
  const auto l = load_graph(o, o.reduce);
  auto d = load(o.dataset, [&](std::istream& in) { return parse_rated_pairs(in, o.dataset); });
  if (known) validate_cardinality(d, *known);
  auto m = load(o.mapping, [&](std::istream& in) { return parse_word_mapping(in, l.taxonomy); });
  std::vector<std::unique_ptr<PairwiseSetup>> setups;
  std::vector<NamedEvaluator> named;
  for (const auto& s : selectors) {
    setups.push_back(setup_pairwise(s, o, l));
    named.push_back({s.text, setups.back()->eval.get()});
  }
  auto run = run_benchmark(d, m, named, o.threads);
  for (const auto& r : run.measures)
    if (r.converted) err << "notice: " << r.measure << " is a distance; scores converted with 1/(d + 1)\n";
  Sink sink(o.out, out);
  write_report_csv(sink.stream(), run);
  sink.commit();
}

}  // namespace detail

/// Runs one command line. Returns the process exit status.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Semantic measures over taxonomies: preprocessing, IC, pairwise and groupwise similarity, relatedness, "
               "benchmarks.\n\nMeasures and estimators are chosen with name[:key=value,...], e.g. li:alpha=0.2,beta=0.6 "
               "or zhou:k=0.6.",
               "smx"};
  app.require_subcommand(1);
  app.fallthrough();  // global options such as --threads may follow the subcommand
  app.option_defaults()->always_capture_default();
  app.add_option("--threads", o.threads, "Worker threads (default: SMX_THREADS or 1)")->check(CLI::PositiveNumber);

  auto graph_opt = [&](CLI::App* c) { c->add_option("--graph", o.graph, "Triple file")->required()->check(CLI::ExistingFile); };
  auto out_opt = [&](CLI::App* c) { c->add_option("--out", o.out, "Output file (default: standard output)"); };
  auto theta_flags = [&](CLI::App* c) {
    c->add_flag("--log2", o.log2, "Base-2 logarithms in IC estimators");
    c->add_flag("--smooth", o.smooth, "Add-one smoothing for extrinsic IC");
  };
  auto annotations_opt = [&](CLI::App* c) {
    c->add_option("--annotations", o.annotations, "instance<TAB>class,... (default: isA edges of the graph)")
        ->check(CLI::ExistingFile);
  };

  auto* pre = app.add_subcommand("preprocess", "Transitive reduction and annotation cleaning");
  graph_opt(pre);
  annotations_opt(pre);
  out_opt(pre);
  pre->add_option("--report", o.report, "Write removed edges and annotations here");
  pre->add_option("--annotations-out", o.annotations_out, "Write cleaned annotations here");

  auto* ic = app.add_subcommand("ic", "Specificity of every class");
  graph_opt(ic);
  annotations_opt(ic);
  out_opt(ic);
  theta_flags(ic);
  ic->add_option("--estimator", o.estimator, "seco|zhou[:k=]|resnik|idf|resnik-intrinsic|sanchez|sanchez-refined|depth|depth-nonlinear|depth-raw")
      ->required();

  auto* sim = app.add_subcommand("sim", "Pairwise class similarity");
  graph_opt(sim);
  annotations_opt(sim);
  out_opt(sim);
  theta_flags(sim);
  sim->add_option("--measure", o.measure, "Measure selector, e.g. lin or li:alpha=0.2,beta=0.6")->required();
  sim->add_option("--ic", o.ic, "Estimator for IC-based measures");
  sim->add_option("--pairs", o.pairs, "classA<TAB>classB per line")->required()->check(CLI::ExistingFile);
  sim->add_flag("--reduce", o.reduce, "Apply transitive reduction before measuring");

  auto* gs = app.add_subcommand("groupsim", "Similarity between annotated instances");
  graph_opt(gs);
  annotations_opt(gs);
  out_opt(gs);
  theta_flags(gs);
  gs->add_option("--measure", o.measure, "simui|nto|simgic|<avg|max|min|avgmax|bmm|bma>:<pairwise>")->required();
  gs->add_option("--ic", o.ic, "Estimator for IC-based measures");
  gs->add_option("--pairs", o.pairs, "instanceA<TAB>instanceB per line")->required()->check(CLI::ExistingFile);
  gs->add_flag("--reduce", o.reduce, "Apply transitive reduction before measuring");

  auto* ab = app.add_subcommand("abstract", "Abstract measure forms");
  graph_opt(ab);
  annotations_opt(ab);
  out_opt(ab);
  theta_flags(ab);
  ab->add_option("--form", o.form, "lin|wupalmer-tree|faith|jc|jaccard|dice|sokal-sneath|simpson|ochiai|abstract-dist|g-dice|sigma-alpha:alpha=|sigma-beta:beta=|ratio:alpha=,beta=|contrast:gamma=,alpha=,beta=")
      ->required();
  ab->add_option("--theta", o.theta, "θ selector, e.g. ic:seco or depth-raw");
  ab->add_option("--commonality", o.commonality, "mica or shared");
  ab->add_option("--pairs", o.pairs, "classA<TAB>classB per line")->required()->check(CLI::ExistingFile);
  ab->add_flag("--reduce", o.reduce, "Apply transitive reduction first");

  auto* rel = app.add_subcommand("rel", "Relatedness over all predicates");
  graph_opt(rel);
  out_opt(rel);
  rel->add_option("--method", o.method, "wsp|hitting|commute|simrank")->required();
  rel->add_option("--weights", o.weights, "predicate<TAB>multiplier per line")->check(CLI::ExistingFile);
  rel->add_option("--pairs", o.pairs, "nodeA<TAB>nodeB per line")->required()->check(CLI::ExistingFile);
  rel->add_option("--decay", o.decay, "SimRank decay");
  rel->add_option("--iterations", o.iterations, "SimRank iterations")->check(CLI::PositiveNumber);
  rel->add_option("--turn-penalty", o.turn_penalty, "wsp: extra cost per change of edge direction");

  auto* bench = app.add_subcommand("bench", "Correlate measures with human ratings");
  graph_opt(bench);
  annotations_opt(bench);
  out_opt(bench);
  theta_flags(bench);
  bench->add_option("--mapping", o.mapping, "word<TAB>class[;class...] per line")->required()->check(CLI::ExistingFile);
  bench->add_option("--dataset", o.dataset, "wordA<TAB>wordB<TAB>rating per line")->required()->check(CLI::ExistingFile);
  bench->add_option("--measures", o.measures, "Comma-separated selectors, e.g. lin:ic=seco,wupalmer,rada")->required();
  bench->add_option("--ic", o.ic, "Default estimator for IC-based measures");
  bench->add_option("--known", o.known, "Check the pair count of rg65|mc30|ws353|mturk771");
  bench->add_flag("--reduce", o.reduce, "Apply transitive reduction first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "smx: " << e.what() << "\n\n";
    auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (name == "preprocess") detail::cmd_preprocess(o, out, err);
    else if (name == "ic") detail::cmd_ic(o, out, err);
    else if (name == "sim") detail::cmd_sim(o, out, err);
    else if (name == "groupsim") detail::cmd_groupsim(o, out, err);
    else if (name == "abstract") detail::cmd_abstract(o, out, err);
    else if (name == "rel") detail::cmd_rel(o, out, err);
    else if (name == "bench") detail::cmd_bench(o, out, err);
  } catch (const SelectorError& e) {
    err << "smx " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "smx " << name << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "smx " << name << ": " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace smx::cli

#endif  // SMX_TOOLS_SMX_CLI_HPP
