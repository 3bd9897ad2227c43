#ifndef SMX_GROUPWISE_HPP
#define SMX_GROUPWISE_HPP

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smx/error.hpp"
#include "smx/measure_value.hpp"
#include "smx/pairwise.hpp"
#include "smx/specificity.hpp"
#include "smx/taxonomy.hpp"

namespace smx {

enum class GroupwiseKind { SimUI, NTO, SimGIC, Aggregate };
enum class AggregateStrategy { Avg, Max, Min, AvgMax, BMM, BMA };

struct GroupwiseMeasureSpec {
  GroupwiseKind kind = GroupwiseKind::SimUI;
  AggregateStrategy strategy = AggregateStrategy::BMA;  // Aggregate only
  PairwiseMeasureSpec inner;                            // Aggregate only
};

[[nodiscard]] constexpr std::string_view strategy_name(AggregateStrategy s) {
  switch (s) {
    case AggregateStrategy::Avg: return "avg";
    case AggregateStrategy::Max: return "max";
    case AggregateStrategy::Min: return "min";
    case AggregateStrategy::AvgMax: return "avgmax";
    case AggregateStrategy::BMM: return "bmm";
    case AggregateStrategy::BMA: return "bma";
  }
  return "?";
}

[[nodiscard]] inline std::optional<AggregateStrategy> strategy_from_name(std::string_view name) {
  for (auto s : {AggregateStrategy::Avg, AggregateStrategy::Max, AggregateStrategy::Min, AggregateStrategy::AvgMax,
                 AggregateStrategy::BMM, AggregateStrategy::BMA})
    if (strategy_name(s) == name) return s;
  return std::nullopt;
}

/// Union of the inclusive ancestor sets of the members of `xs`.
[[nodiscard]] inline std::vector<ClassId> ancestor_closure(const TaxonomyView& t, std::span<const ClassId> xs) {
  std::vector<ClassId> out;
  for (auto x : xs) {
    auto a = t.ancestors(x);
    out.insert(out.end(), a.begin(), a.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Aggregates a |U|×|V| score matrix (row-major).
[[nodiscard]] inline double aggregate(std::span<const double> m, std::size_t rows, std::size_t cols, AggregateStrategy s) {
  auto row_best = [&](std::size_t r) { return *std::max_element(m.begin() + r * cols, m.begin() + (r + 1) * cols); };
  auto col_best = [&](std::size_t c) {
    double best = m[c];
    for (std::size_t r = 1; r < rows; ++r) best = std::max(best, m[r * cols + c]);
    return best;
  };
  auto avg_max_rows = [&] {
    double s = 0.0;
    for (std::size_t r = 0; r < rows; ++r) s += row_best(r);
    return s / static_cast<double>(rows);
  };
  auto avg_max_cols = [&] {
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += col_best(c);
    return s / static_cast<double>(cols);
  };
  switch (s) {
    case AggregateStrategy::Avg: {
      double total = 0.0;
      for (double x : m) total += x;
      return total / static_cast<double>(m.size());
    }
    case AggregateStrategy::Max: return *std::max_element(m.begin(), m.end());
    case AggregateStrategy::Min: return *std::min_element(m.begin(), m.end());
    case AggregateStrategy::AvgMax: return avg_max_rows();
    case AggregateStrategy::BMM: return std::max(avg_max_rows(), avg_max_cols());
    case AggregateStrategy::BMA: return (avg_max_rows() + avg_max_cols()) / 2.0;
  }
  throw Error(ErrorKind::Contract, "unknown aggregation strategy");
}

/// Group measure over one taxonomy. Direct kinds expand the sets to their
/// ancestor closures; Aggregate scores the sets as given.
class GroupwiseEvaluator {
 public:
  GroupwiseEvaluator(GroupwiseMeasureSpec spec, const TaxonomyView& t, PairwiseBindings b = {})
      : spec_{spec}, t_{&t}, b_{b} {
    if (spec_.kind == GroupwiseKind::SimGIC && b_.theta == nullptr)
      throw Error(ErrorKind::Usage, "simgic needs a θ estimator");
    if (spec_.kind == GroupwiseKind::Aggregate) {
      inner_.emplace(spec_.inner, t, b);
      if (inner_->traits().polarity == Polarity::Distance && spec_.strategy != AggregateStrategy::Avg)
        throw Error(ErrorKind::Polarity, std::string(strategy_name(spec_.strategy)) + " needs a similarity; '" +
                                             std::string(inner_->traits().name) + "' is a distance");
    }
  }

  [[nodiscard]] Polarity polarity() const {
    return inner_ ? inner_->traits().polarity : Polarity::Similarity;
  }

  [[nodiscard]] MeasureValue operator()(std::span<const ClassId> us, std::span<const ClassId> vs) const {
    if (us.empty() || vs.empty()) throw Error(ErrorKind::Contract, "groupwise measures need non-empty class sets");
    for (auto c : us) t_->check(c);
    for (auto c : vs) t_->check(c);
    if (spec_.kind == GroupwiseKind::Aggregate) {
      std::vector<double> m;
      m.reserve(us.size() * vs.size());
      bool degenerate = false;
      for (auto u : us)
        for (auto v : vs) {
          auto mv = (*inner_)(u, v);
          degenerate = degenerate || mv.degenerate;
          m.push_back(mv.value);
        }
      return {aggregate(m, us.size(), vs.size(), spec_.strategy), inner_->traits().polarity,
              inner_->traits().normalized(), degenerate};
    }
    const auto cu = ancestor_closure(*t_, us);
    const auto cv = ancestor_closure(*t_, vs);
    std::vector<ClassId> both, either;
    std::set_intersection(cu.begin(), cu.end(), cv.begin(), cv.end(), std::back_inserter(both));
    std::set_union(cu.begin(), cu.end(), cv.begin(), cv.end(), std::back_inserter(either));
    double num = 0.0, den = 0.0;
    switch (spec_.kind) {
      case GroupwiseKind::SimUI:
        num = static_cast<double>(both.size());
        den = static_cast<double>(either.size());
        break;
      case GroupwiseKind::NTO:
        num = static_cast<double>(both.size());
        den = static_cast<double>(std::min(cu.size(), cv.size()));
        break;
      case GroupwiseKind::SimGIC:
        for (auto c : both) num += (*b_.theta)(c);
        for (auto c : either) den += (*b_.theta)(c);
        if (den == 0.0) return {0.0, Polarity::Similarity, true, true};
        break;
      case GroupwiseKind::Aggregate: break;
    }
    return {num / den, Polarity::Similarity, true, false};
  }

 private:
  GroupwiseMeasureSpec spec_;
  const TaxonomyView* t_;
  PairwiseBindings b_;
  std::optional<PairwiseEvaluator> inner_;
};

[[nodiscard]] inline MeasureValue eval_groupwise(const GroupwiseMeasureSpec& spec, const TaxonomyView& t,
                                                 std::span<const ClassId> us, std::span<const ClassId> vs,
                                                 PairwiseBindings b = {}) {
  return GroupwiseEvaluator(spec, t, b)(us, vs);
}

}  // namespace smx

#endif  // SMX_GROUPWISE_HPP
