#ifndef SMX_BENCH_HPP
#define SMX_BENCH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smx/error.hpp"
#include "smx/ingest.hpp"
#include "smx/measure_value.hpp"
#include "smx/pairwise.hpp"
#include "smx/parallel.hpp"

namespace smx {

/// Sample Pearson correlation. nullopt when n < 2 or a series is constant.
[[nodiscard]] inline std::optional<double> pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::Contract, "correlation series differ in length");
  const std::size_t n = xs.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// 1-based ranks; tied values share the average of their positions.
[[nodiscard]] inline std::vector<double> average_ranks(std::span<const double> xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

[[nodiscard]] inline std::optional<double> spearman(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::Contract, "correlation series differ in length");
  const auto rx = average_ranks(xs);
  const auto ry = average_ranks(ys);
  return pearson(rx, ry);
}

enum class KnownDataset { RG65, MC30, WordSim353, MTurk771 };

[[nodiscard]] constexpr std::size_t expected_size(KnownDataset d) {
  switch (d) {
    case KnownDataset::RG65: return 65;
    case KnownDataset::MC30: return 30;
    case KnownDataset::WordSim353: return 353;  // 153 + 200
    case KnownDataset::MTurk771: return 771;
  }
  return 0;
}

[[nodiscard]] inline std::optional<KnownDataset> known_dataset_from_name(std::string_view s) {
  if (s == "rg65") return KnownDataset::RG65;
  if (s == "mc30") return KnownDataset::MC30;
  if (s == "ws353") return KnownDataset::WordSim353;
  if (s == "mturk771") return KnownDataset::MTurk771;
  return std::nullopt;
}

/// Throws Parse when the file does not hold the published number of pairs.
inline void validate_cardinality(const RatedPairSet& d, KnownDataset kind) {
  const std::size_t want = expected_size(kind);
  if (d.pairs.size() != want)
    throw Error(ErrorKind::Parse, "dataset '" + d.name + "' has " + std::to_string(d.pairs.size()) +
                                      " pairs, expected " + std::to_string(want));
}

struct PairScore {
  const RatedPair* pair = nullptr;
  std::optional<double> score;  // nullopt: a word has no mapping
};

struct ScoredPairs {
  std::vector<PairScore> rows;
  bool converted = false;  // distance scores were mapped through 1/(d + 1)
};

/// Scores every rated pair with the best value over the Cartesian product of
/// the two words' class sets. Distances are converted to similarities first
/// so that correlations keep their sign.
[[nodiscard]] inline ScoredPairs score_pairs(const RatedPairSet& d, const WordMapping& m, const PairwiseEvaluator& eval,
                                             std::size_t threads = 1) {
  ScoredPairs out;
  out.converted = eval.traits().polarity == Polarity::Distance;
  out.rows.resize(d.pairs.size());
  parallel_for(d.pairs.size(), threads, [&](std::size_t i) {
    const auto& p = d.pairs[i];
    out.rows[i].pair = &p;
    auto a = m.entries.find(p.first);
    auto b = m.entries.find(p.second);
    if (a == m.entries.end() || b == m.entries.end()) return;
    double best = -std::numeric_limits<double>::infinity();
    try {
      for (auto x : a->second)
        for (auto y : b->second) {
          auto mv = eval(x, y);
          if (out.converted) mv = convert(mv, Polarity::Similarity, ConversionRule::Reciprocal);
          best = std::max(best, mv.value);
        }
    } catch (const Error& e) {
      throw Error(e.kind(), (d.name.empty() ? std::string("dataset") : d.name) + " line " + std::to_string(p.line) +
                                " (" + p.first + ", " + p.second + "): " + e.what());
    }
    out.rows[i].score = best;
  });
  return out;
}

struct MeasureReport {
  std::string measure;
  std::size_t scored = 0;
  std::size_t skipped = 0;
  std::optional<double> pearson;
  std::optional<double> spearman;
  bool converted = false;
};

struct BenchmarkRun {
  std::string dataset;
  std::vector<MeasureReport> measures;
};

[[nodiscard]] inline MeasureReport summarize(std::string label, const ScoredPairs& s) {
  MeasureReport r;
  r.measure = std::move(label);
  r.converted = s.converted;
  std::vector<double> human, machine;
  for (const auto& row : s.rows) {
    if (!row.score) {
      ++r.skipped;
      continue;
    }
    ++r.scored;
    human.push_back(row.pair->rating);
    machine.push_back(*row.score);
  }
  r.pearson = pearson(human, machine);
  r.spearman = spearman(human, machine);
  return r;
}

struct NamedEvaluator {
  std::string label;
  const PairwiseEvaluator* eval = nullptr;
};

[[nodiscard]] inline BenchmarkRun run_benchmark(const RatedPairSet& d, const WordMapping& m,
                                                std::span<const NamedEvaluator> measures, std::size_t threads = 1) {
  if (measures.empty()) throw Error(ErrorKind::Contract, "benchmark needs at least one measure");
  BenchmarkRun run;
  run.dataset = d.name;
  for (const auto& nm : measures) run.measures.push_back(summarize(nm.label, score_pairs(d, m, *nm.eval, threads)));
  return run;
}

inline void write_report_csv(std::ostream& out, const BenchmarkRun& run) {
  auto cell = [](const std::optional<double>& x) { return x ? format_number(*x) : std::string(); };
  out << "measure,n_scored,n_skipped,pearson,spearman\n";
  for (const auto& r : run.measures) {
    std::string label = r.measure;
    if (label.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : label) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      label = quoted + "\"";
    }
    out << label << ',' << r.scored << ',' << r.skipped << ',' << cell(r.pearson) << ',' << cell(r.spearman) << '\n';
  }
}

}  // namespace smx

#endif  // SMX_BENCH_HPP
