#ifndef SMX_SPECIFICITY_HPP
#define SMX_SPECIFICITY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smx/error.hpp"
#include "smx/ingest.hpp"
#include "smx/taxonomy.hpp"

namespace smx {

/// Per-class inclusive instance membership: an instance belongs to c when one
/// of its annotated classes lies in D(c).
class ClassUsage {
 public:
  [[nodiscard]] std::size_t total() const { return instance_names_.size(); }
  [[nodiscard]] std::size_t count(ClassId c) const { return off_.at(c.index() + 1) - off_[c.index()]; }
  /// Sorted indices into instance_names().
  [[nodiscard]] std::span<const std::uint32_t> instances(ClassId c) const {
    return {members_.data() + off_.at(c.index()), count(c)};
  }
  [[nodiscard]] std::span<const std::string> instance_names() const { return instance_names_; }

 private:
  friend ClassUsage class_usage(const TaxonomyView&, const AnnotationSet&);
  std::vector<std::string> instance_names_;
  std::vector<std::size_t> off_;
  std::vector<std::uint32_t> members_;
};

[[nodiscard]] inline ClassUsage class_usage(const TaxonomyView& t, const AnnotationSet& a) {
  if (a.entries.empty()) throw Error(ErrorKind::Usage, "empty annotation set: extrinsic statistics are undefined");
  ClassUsage u;
  std::vector<std::vector<std::uint32_t>> lists(t.size());
  std::vector<ClassId> closure;
  for (const auto& [instance, classes] : a.entries) {
    const auto idx = static_cast<std::uint32_t>(u.instance_names_.size());
    u.instance_names_.push_back(instance);
    closure.clear();
    for (auto c : classes) {
      auto anc = t.ancestors(c);
      closure.insert(closure.end(), anc.begin(), anc.end());
    }
    std::sort(closure.begin(), closure.end());
    closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
    for (auto c : closure) lists[c.index()].push_back(idx);
  }
  u.off_.assign(t.size() + 1, 0);
  for (std::size_t c = 0; c < t.size(); ++c) u.off_[c + 1] = u.off_[c] + lists[c].size();
  u.members_.reserve(u.off_.back());
  for (const auto& l : lists) u.members_.insert(u.members_.end(), l.begin(), l.end());
  return u;
}

enum class ThetaKind {
  DepthRaw,         // depth(c), unnormalized
  DepthNormalized,  // depth(c) / max_depth
  DepthNonLinear,   // log(depth(c)+1) / log(max_depth+1)
  ICResnikExtrinsic,
  ICResnikIntrinsic,
  IDF,
  ICSeco,
  ICZhou,
  ICSanchezLeaves,
  ICSanchezRefined,
  Custom,
};

[[nodiscard]] constexpr bool is_extrinsic(ThetaKind k) {
  return k == ThetaKind::ICResnikExtrinsic || k == ThetaKind::IDF;
}

enum class LogBase { Natural, Two };

struct ThetaOptions {
  LogBase log_base = LogBase::Natural;
  bool add_one_smoothing = false;  // extrinsic kinds only
  double zhou_k = 0.6;
};

/// A bound specificity function θ. Values are computed once per class at
/// construction; evaluation is a table lookup. Holds a pointer to the
/// taxonomy, which must outlive the estimator.
class ThetaEstimator {
 public:
  static ThetaEstimator make(ThetaKind kind, const TaxonomyView& t, const ThetaOptions& opt = {},
                             const ClassUsage* usage = nullptr) {
    ThetaEstimator e(kind, t, opt);
    const std::size_t n = t.size();
    const double classes = static_cast<double>(n);
    const double max_depth = t.max_depth();
    e.values_.assign(n, 0.0);

    if (is_extrinsic(kind) && usage == nullptr)
      throw Error(ErrorKind::Usage, "extrinsic estimator requires instance annotations");
    if ((kind == ThetaKind::ICSeco || kind == ThetaKind::ICZhou) && n < 2)
      throw Error(ErrorKind::Degenerate, "IC based on |C| needs at least two classes");
    if (kind == ThetaKind::ICZhou && !(opt.zhou_k >= 0.0 && opt.zhou_k <= 1.0))
      throw Error(ErrorKind::Contract, "Zhou k must lie in [0, 1]");

    std::vector<double> leaves_below;
    if (kind == ThetaKind::ICSanchezLeaves || kind == ThetaKind::ICSanchezRefined) {
      leaves_below.assign(n, 0.0);
      for (auto l : t.leaves())
        for (auto a : t.ancestors(l)) leaves_below[a.index()] += 1.0;
    }
    const double leaf_total = static_cast<double>(t.leaves().size());

    for (std::size_t i = 0; i < n; ++i) {
      const ClassId c{i};
      const double d = t.depth(c);
      const double desc = static_cast<double>(t.descendants(c).size());
      double v = 0.0;
      switch (kind) {
        case ThetaKind::DepthRaw: v = d; break;
        case ThetaKind::DepthNormalized: v = max_depth > 0 ? d / max_depth : 0.0; break;
        case ThetaKind::DepthNonLinear: v = max_depth > 0 ? std::log(d + 1.0) / std::log(max_depth + 1.0) : 0.0; break;
        case ThetaKind::ICResnikExtrinsic:
        case ThetaKind::IDF: {
          double members = static_cast<double>(usage->count(c));
          double all = static_cast<double>(usage->total());
          if (opt.add_one_smoothing) {
            members += desc;
            all += classes;
          }
          v = members > 0 ? e.log(all) - e.log(members) : std::numeric_limits<double>::infinity();
          break;
        }
        case ThetaKind::ICResnikIntrinsic: v = e.log(classes) - e.log(desc); break;
        case ThetaKind::ICSeco: v = 1.0 - std::log(desc) / std::log(classes); break;
        case ThetaKind::ICZhou:
          v = opt.zhou_k * (1.0 - std::log(desc) / std::log(classes)) +
              (1.0 - opt.zhou_k) * (std::log(d + 1.0) / std::log(max_depth + 1.0));
          break;
        case ThetaKind::ICSanchezLeaves: v = e.log(leaf_total) - e.log(leaves_below[i]); break;
        case ThetaKind::ICSanchezRefined: {
          const double subsumers = static_cast<double>(t.ancestors(c).size());
          v = -e.log((leaves_below[i] / subsumers + 1.0) / (leaf_total + 1.0));
          break;
        }
        case ThetaKind::Custom: break;
      }
      e.values_[i] = v == 0.0 ? 0.0 : v;  // no negative zero
    }
    e.finish();
    return e;
  }

  /// Wraps caller-supplied values (one per class); used to inject arbitrary,
  /// possibly non-monotone, θ functions.
  static ThetaEstimator from_values(const TaxonomyView& t, std::vector<double> values, std::string label) {
    if (values.size() != t.size()) throw Error(ErrorKind::Contract, "one value per class is required");
    for (double v : values)
      if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::Contract, "θ values must be finite and non-negative");
    ThetaEstimator e(ThetaKind::Custom, t, {});
    e.values_ = std::move(values);
    e.label_ = std::move(label);
    e.finish();
    return e;
  }

  /// θ(c). Throws InfiniteIC for an extrinsic estimator on a class without
  /// instances.
  [[nodiscard]] double operator()(ClassId c) const {
    taxonomy_->check(c);
    const double v = values_[c.index()];
    if (std::isinf(v))
      throw Error(ErrorKind::InfiniteIC, "class '" + std::string(taxonomy_->name(c)) + "' has no instances");
    return v;
  }

  [[nodiscard]] ThetaKind kind() const { return kind_; }
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] const TaxonomyView& taxonomy() const { return *taxonomy_; }
  [[nodiscard]] const ThetaOptions& options() const { return options_; }
  [[nodiscard]] bool monotone() const { return monotone_; }
  /// Largest finite value over all classes.
  [[nodiscard]] double max_value() const { return max_value_; }
  /// Probability whose negative log is θ(c), in the estimator's log base.
  [[nodiscard]] double probability(ClassId c) const {
    const double v = (*this)(c);
    return options_.log_base == LogBase::Two ? std::exp2(-v) : std::exp(-v);
  }
  [[nodiscard]] double log(double x) const {
    return options_.log_base == LogBase::Two ? std::log2(x) : std::log(x);
  }

 private:
  ThetaEstimator(ThetaKind k, const TaxonomyView& t, const ThetaOptions& opt)
      : kind_{k}, taxonomy_{&t}, options_{opt}, label_{default_label(k)} {}

  static std::string default_label(ThetaKind k) {
    switch (k) {
      case ThetaKind::DepthRaw: return "depth-raw";
      case ThetaKind::DepthNormalized: return "depth";
      case ThetaKind::DepthNonLinear: return "depth-nonlinear";
      case ThetaKind::ICResnikExtrinsic: return "resnik";
      case ThetaKind::ICResnikIntrinsic: return "resnik-intrinsic";
      case ThetaKind::IDF: return "idf";
      case ThetaKind::ICSeco: return "seco";
      case ThetaKind::ICZhou: return "zhou";
      case ThetaKind::ICSanchezLeaves: return "sanchez";
      case ThetaKind::ICSanchezRefined: return "sanchez-refined";
      case ThetaKind::Custom: return "custom";
    }
    return "custom";
  }

  void finish() {
    monotone_ = true;
    max_value_ = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (std::isfinite(values_[i])) max_value_ = std::max(max_value_, values_[i]);
      for (auto p : taxonomy_->parents(ClassId{i}))
        if (values_[i] < values_[p.index()]) monotone_ = false;
    }
  }

  ThetaKind kind_;
  const TaxonomyView* taxonomy_;
  ThetaOptions options_;
  std::string label_;
  std::vector<double> values_;
  double max_value_ = 0.0;
  bool monotone_ = true;
};

[[nodiscard]] inline double eval_theta(const ThetaEstimator& est, ClassId c) { return est(c); }

/// Taxonomy edges (child, parent) with θ(child) < θ(parent).
[[nodiscard]] inline std::vector<std::pair<ClassId, ClassId>> validate_monotonicity(const ThetaEstimator& est) {
  const auto& t = est.taxonomy();
  std::vector<std::pair<ClassId, ClassId>> out;
  auto raw = [&](ClassId c) {
    try {
      return est(c);
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    const ClassId c{i};
    for (auto p : t.parents(c))
      if (raw(c) < raw(p)) out.emplace_back(c, p);
  }
  return out;
}

/// Strength of connotation of an ordered pair u ≼ v: θ(u) − θ(v).
[[nodiscard]] inline double connotation_weight(const ThetaEstimator& est, ClassId u, ClassId v) {
  const auto& t = est.taxonomy();
  if (!t.subsumes(v, u))
    throw Error(ErrorKind::Ordering,
                "'" + std::string(t.name(v)) + "' does not subsume '" + std::string(t.name(u)) + "'");
  return est(u) - est(v);
}

}  // namespace smx

#endif  // SMX_SPECIFICITY_HPP
