#ifndef SMX_PAIRWISE_HPP
#define SMX_PAIRWISE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "smx/error.hpp"
#include "smx/measure_value.hpp"
#include "smx/specificity.hpp"
#include "smx/taxonomy.hpp"

namespace smx {

enum class PairwiseKind {
  // structural
  RadaDist,
  RadaSim,
  ResnikEdgeBounded,
  LeacockChodorow,
  WuPalmer,
  PekarStaab,
  Zhong,
  LiParametric,
  SlimaniTBK,
  Shenoy,
  // information theoretic
  ResnikIC,
  Lin,
  JiangConrathDist,
  Nunivers,
  PSec,
  Faith,
  RelSchlicker,
  SimDICAncestorSum,
  JacAnc,
  LinGraSM,
  WangDCA,
  // feature based
  CMatchJaccard,
  DiceAncestors,
  Bulskov,
  RodriguezEgenhofer,
  SanchezDist,
  TverskyRatio,
  TverskyContrast,
  JaccardExtensional,
  DAmatoExtensional,
  // hybrid
  JCHybridDist,
};

inline constexpr std::array kAllPairwiseKinds = {
    PairwiseKind::RadaDist,          PairwiseKind::RadaSim,          PairwiseKind::ResnikEdgeBounded,
    PairwiseKind::LeacockChodorow,   PairwiseKind::WuPalmer,         PairwiseKind::PekarStaab,
    PairwiseKind::Zhong,             PairwiseKind::LiParametric,     PairwiseKind::SlimaniTBK,
    PairwiseKind::Shenoy,            PairwiseKind::ResnikIC,         PairwiseKind::Lin,
    PairwiseKind::JiangConrathDist,  PairwiseKind::Nunivers,         PairwiseKind::PSec,
    PairwiseKind::Faith,             PairwiseKind::RelSchlicker,     PairwiseKind::SimDICAncestorSum,
    PairwiseKind::JacAnc,            PairwiseKind::LinGraSM,         PairwiseKind::WangDCA,
    PairwiseKind::CMatchJaccard,     PairwiseKind::DiceAncestors,    PairwiseKind::Bulskov,
    PairwiseKind::RodriguezEgenhofer, PairwiseKind::SanchezDist,     PairwiseKind::TverskyRatio,
    PairwiseKind::TverskyContrast,   PairwiseKind::JaccardExtensional, PairwiseKind::DAmatoExtensional,
    PairwiseKind::JCHybridDist,
};

/// Parameters shared by the catalog. Each kind reads only the ones it needs.
struct PairwiseParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double k = 2.0;       // Zhong
  double lambda = 1.0;  // Slimani (0 or 1), Shenoy
  double predicate_weight = 1.0;  // JCHybrid T(u, v)
  double path_cap = 1e5;          // WangDCA: max paths through one common ancestor
};

struct PairwiseMeasureSpec {
  PairwiseKind kind = PairwiseKind::Lin;
  PairwiseParams params;

  /// Spec with the default parameters of `kind`. LiParametric's
  /// alpha = 0.2, beta = 0.6 are this library's defaults.
  static PairwiseMeasureSpec make(PairwiseKind kind) {
    PairwiseMeasureSpec s{kind, {}};
    switch (kind) {
      case PairwiseKind::LiParametric: s.params.alpha = 0.2; s.params.beta = 0.6; break;
      case PairwiseKind::Bulskov: s.params.alpha = 0.5; break;
      case PairwiseKind::RodriguezEgenhofer: s.params.gamma = 0.5; break;
      case PairwiseKind::TverskyRatio: s.params.alpha = 1.0; s.params.beta = 1.0; break;
      case PairwiseKind::TverskyContrast: s.params.gamma = 1.0; s.params.alpha = 0.5; s.params.beta = 0.5; break;
      case PairwiseKind::JCHybridDist: s.params.alpha = 0.0; s.params.beta = 1.0; break;
      default: break;
    }
    return s;
  }
};

/// Properties a measure declares; the property tests check every evaluation
/// against them.
struct MeasureTraits {
  std::string_view name;
  Polarity polarity = Polarity::Similarity;
  double lo = 0.0;  // declared range, given the bound taxonomy and θ
  double hi = 1.0;
  bool symmetric = true;
  bool identity = true;  // eval(u, u) is hi for similarities, 0 for distances
  bool path_based = false;
  bool needs_theta = false;
  bool needs_usage = false;
  [[nodiscard]] bool normalized() const { return lo >= 0.0 && hi <= 1.0; }
};

[[nodiscard]] constexpr std::string_view pairwise_name(PairwiseKind k) {
  switch (k) {
    case PairwiseKind::RadaDist: return "rada";
    case PairwiseKind::RadaSim: return "rada-sim";
    case PairwiseKind::ResnikEdgeBounded: return "resnik-eb";
    case PairwiseKind::LeacockChodorow: return "lc";
    case PairwiseKind::WuPalmer: return "wupalmer";
    case PairwiseKind::PekarStaab: return "pekar-staab";
    case PairwiseKind::Zhong: return "zhong";
    case PairwiseKind::LiParametric: return "li";
    case PairwiseKind::SlimaniTBK: return "slimani";
    case PairwiseKind::Shenoy: return "shenoy";
    case PairwiseKind::ResnikIC: return "resnik";
    case PairwiseKind::Lin: return "lin";
    case PairwiseKind::JiangConrathDist: return "jc";
    case PairwiseKind::Nunivers: return "nunivers";
    case PairwiseKind::PSec: return "psec";
    case PairwiseKind::Faith: return "faith";
    case PairwiseKind::RelSchlicker: return "rel";
    case PairwiseKind::SimDICAncestorSum: return "simdic";
    case PairwiseKind::JacAnc: return "jacanc";
    case PairwiseKind::LinGraSM: return "lin-grasm";
    case PairwiseKind::WangDCA: return "wang";
    case PairwiseKind::CMatchJaccard: return "cmatch";
    case PairwiseKind::DiceAncestors: return "dice";
    case PairwiseKind::Bulskov: return "bulskov";
    case PairwiseKind::RodriguezEgenhofer: return "rodriguez-egenhofer";
    case PairwiseKind::SanchezDist: return "sanchez";
    case PairwiseKind::TverskyRatio: return "tversky-ratio";
    case PairwiseKind::TverskyContrast: return "tversky-contrast";
    case PairwiseKind::JaccardExtensional: return "jaccard-ext";
    case PairwiseKind::DAmatoExtensional: return "damato";
    case PairwiseKind::JCHybridDist: return "jc-hybrid";
  }
  return "?";
}

[[nodiscard]] inline std::optional<PairwiseKind> pairwise_kind_from_name(std::string_view name) {
  for (auto k : kAllPairwiseKinds)
    if (pairwise_name(k) == name) return k;
  return std::nullopt;
}

[[nodiscard]] constexpr bool needs_theta(PairwiseKind k) {
  switch (k) {
    case PairwiseKind::ResnikIC:
    case PairwiseKind::Lin:
    case PairwiseKind::JiangConrathDist:
    case PairwiseKind::Nunivers:
    case PairwiseKind::PSec:
    case PairwiseKind::Faith:
    case PairwiseKind::RelSchlicker:
    case PairwiseKind::SimDICAncestorSum:
    case PairwiseKind::JacAnc:
    case PairwiseKind::LinGraSM:
    case PairwiseKind::JCHybridDist: return true;
    default: return false;
  }
}

[[nodiscard]] constexpr bool needs_usage(PairwiseKind k) {
  return k == PairwiseKind::JaccardExtensional || k == PairwiseKind::DAmatoExtensional;
}

[[nodiscard]] constexpr bool is_path_based(PairwiseKind k) {
  switch (k) {
    case PairwiseKind::RadaDist:
    case PairwiseKind::RadaSim:
    case PairwiseKind::ResnikEdgeBounded:
    case PairwiseKind::LeacockChodorow:
    case PairwiseKind::WuPalmer:
    case PairwiseKind::LiParametric:
    case PairwiseKind::SlimaniTBK:
    case PairwiseKind::Shenoy:
    case PairwiseKind::WangDCA:
    case PairwiseKind::JCHybridDist: return true;
    default: return false;
  }
}

struct PairwiseBindings {
  const ThetaEstimator* theta = nullptr;  // IC-family kinds
  const ClassUsage* usage = nullptr;      // extensional kinds
};

/// Evaluates one measure over one taxonomy. Construction validates parameters
/// and bindings and precomputes what the kind needs; evaluation is const and
/// safe to call from several threads.
class PairwiseEvaluator {
 public:
  PairwiseEvaluator(PairwiseMeasureSpec spec, const TaxonomyView& t, PairwiseBindings b = {})
      : spec_{spec}, t_{&t}, b_{b} {
    const auto k = spec_.kind;
    const auto& p = spec_.params;
    if (needs_theta(k) && b_.theta == nullptr)
      throw Error(ErrorKind::Usage, std::string(pairwise_name(k)) + " needs a θ estimator");
    if (needs_usage(k) && b_.usage == nullptr)
      throw Error(ErrorKind::Usage, std::string(pairwise_name(k)) + " needs instance annotations");
    if (b_.theta != nullptr && &b_.theta->taxonomy() != t_ && b_.theta->taxonomy().size() != t_->size())
      throw Error(ErrorKind::Contract, "θ estimator bound to a different taxonomy");
    if (is_path_based(k) && !t.is_transitively_reduced()) {
      const auto r = t.redundant_edges();
      throw Error(ErrorKind::Redundancy,
                  std::string(pairwise_name(k)) + " requires a transitively reduced taxonomy: " +
                      std::to_string(r.size()) + " redundant subClassOf edge(s), e.g. " +
                      std::string(t.name(r.front().first)) + " -> " + std::string(t.name(r.front().second)) +
                      "; shortest paths would underestimate distances (run `smx preprocess` or pass --reduce)");
    }
    auto require = [&](bool ok, const char* what) {
      if (!ok) throw Error(ErrorKind::Contract, std::string(pairwise_name(k)) + ": " + what);
    };
    switch (k) {
      case PairwiseKind::Zhong: require(p.k > 1.0, "k must be > 1"); break;
      case PairwiseKind::LiParametric: require(p.alpha >= 0.0 && p.beta > 0.0, "needs alpha >= 0 and beta > 0"); break;
      case PairwiseKind::SlimaniTBK: require(p.lambda == 0.0 || p.lambda == 1.0, "lambda must be 0 or 1"); break;
      case PairwiseKind::Shenoy: require(std::isfinite(p.lambda), "lambda must be finite"); break;
      case PairwiseKind::Bulskov: require(p.alpha >= 0.0 && p.alpha <= 1.0, "alpha must lie in [0, 1]"); break;
      case PairwiseKind::RodriguezEgenhofer: require(p.gamma >= 0.0 && p.gamma <= 1.0, "gamma must lie in [0, 1]"); break;
      case PairwiseKind::TverskyRatio: require(p.alpha >= 0.0 && p.beta >= 0.0, "alpha and beta must be >= 0"); break;
      case PairwiseKind::TverskyContrast:
        require(p.alpha >= 0.0 && p.beta >= 0.0 && p.gamma >= 0.0, "gamma, alpha and beta must be >= 0");
        break;
      case PairwiseKind::WangDCA: require(p.path_cap >= 1.0, "path cap must be >= 1"); break;
      case PairwiseKind::JCHybridDist:
        require(p.alpha >= 0.0 && p.beta >= 0.0 && p.beta <= 1.0 && p.predicate_weight >= 0.0,
                "needs alpha >= 0, beta in [0, 1], weight >= 0");
        require(b_.theta->monotone(), "θ must be monotone so that edge weights are non-negative");
        break;
      default: break;
    }
    init_traits();
    if (k == PairwiseKind::WangDCA) init_root_paths();
    if (k == PairwiseKind::JCHybridDist) {
      double children = 0.0, inner = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        auto ch = t.children(ClassId{i}).size();
        if (ch > 0) {
          children += static_cast<double>(ch);
          inner += 1.0;
        }
      }
      avg_density_ = inner > 0 ? children / inner : 0.0;
    }
  }

  [[nodiscard]] const MeasureTraits& traits() const { return traits_; }
  [[nodiscard]] const PairwiseMeasureSpec& spec() const { return spec_; }
  [[nodiscard]] const TaxonomyView& taxonomy() const { return *t_; }

  [[nodiscard]] MeasureValue operator()(ClassId u, ClassId v) const {
    t_->check(u);
    t_->check(v);
    const auto& p = spec_.params;
    const auto& t = *t_;
    const int max_depth = t.max_depth();
    switch (spec_.kind) {
      case PairwiseKind::RadaDist: return dist(static_cast<double>(rada(u, v)), false);
      case PairwiseKind::RadaSim: return sim(1.0 / (rada(u, v) + 1.0));
      case PairwiseKind::ResnikEdgeBounded: {
        auto [l, su, sv] = lca_paths(u, v);
        return sim(2.0 * max_depth - su - sv);
      }
      case PairwiseKind::LeacockChodorow: {
        if (max_depth == 0) return degenerate();
        auto [l, su, sv] = lca_paths(u, v);
        const double n = su + sv + 1.0;
        return sim(std::log(2.0 * max_depth) - std::log(n));
      }
      case PairwiseKind::WuPalmer: return sim_ratio(wu_palmer(u, v));
      case PairwiseKind::PekarStaab: {
        const ClassId l = deepest_common_ancestor(t, u, v);
        const double dl = t.depth(l);
        const double lu = upward_path_length(t, u, l, PathLength::Longest);
        const double lv = upward_path_length(t, v, l, PathLength::Longest);
        return sim_ratio({dl, lu + lv + dl});
      }
      case PairwiseKind::Zhong: {
        const ClassId l = deepest_common_ancestor(t, u, v);
        auto m = [&](ClassId c) { return 1.0 / (2.0 * std::pow(p.k, t.depth(c))); };
        return dist(std::max(0.0, 2.0 * m(l) - m(u) - m(v)), true);
      }
      case PairwiseKind::LiParametric: {
        const double h = t.depth(deepest_common_ancestor(t, u, v));
        return sim(std::exp(-p.alpha * rada(u, v)) * std::tanh(p.beta * h));
      }
      case PairwiseKind::SlimaniTBK: {
        auto wp = wu_palmer(u, v);
        if (wp.second == 0.0) return degenerate();
        const double du = t.depth(u), dv = t.depth(v);
        const double pf = (1.0 - p.lambda) * (std::min(du, dv) - max_depth) + p.lambda / (du + dv + 1.0);
        return sim(wp.first / wp.second * pf);
      }
      case PairwiseKind::Shenoy: {
        const double den = t.depth(u) + t.depth(v);
        if (den == 0.0) return degenerate();
        const double big_d = max_depth;
        return sim(2.0 * big_d * std::exp(-p.lambda * shenoy_weight(u, v) / big_d) / den);
      }
      case PairwiseKind::ResnikIC: return sim(theta(mica_of(u, v)));
      case PairwiseKind::Lin: {
        const double m = theta(mica_of(u, v));
        return sim_ratio({2.0 * m, theta(u) + theta(v)});
      }
      case PairwiseKind::JiangConrathDist: {
        const double m = theta(mica_of(u, v));
        return dist(std::max(0.0, theta(u) + theta(v) - 2.0 * m), false);
      }
      case PairwiseKind::Nunivers: {
        const double m = theta(mica_of(u, v));
        return sim_ratio({m, std::max(theta(u), theta(v))});
      }
      case PairwiseKind::PSec: {
        const double m = theta(mica_of(u, v));
        return sim(3.0 * m - theta(u) - theta(v));
      }
      case PairwiseKind::Faith: {
        const double m = theta(mica_of(u, v));
        return sim_ratio({m, theta(u) + theta(v) - m});
      }
      case PairwiseKind::RelSchlicker: {
        const ClassId m = mica_of(u, v);
        auto lin = sim_ratio({2.0 * theta(m), theta(u) + theta(v)});
        lin.value *= 1.0 - b_.theta->probability(m);
        return lin;
      }
      case PairwiseKind::SimDICAncestorSum: {
        auto [common, only_u, only_v] = theta_sums(u, v);
        return sim_ratio({2.0 * common, 2.0 * common + only_u + only_v});
      }
      case PairwiseKind::JacAnc: {
        auto [common, only_u, only_v] = theta_sums(u, v);
        return sim_ratio({common, common + only_u + only_v});
      }
      case PairwiseKind::LinGraSM: {
        const auto omega = ncca(t, u, v);
        double total = 0.0;
        for (auto c : omega) total += theta(c);
        const double avg = total / static_cast<double>(omega.size());
        return sim_ratio({2.0 * avg, theta(u) + theta(v)});
      }
      case PairwiseKind::WangDCA: return wang(u, v);
      case PairwiseKind::CMatchJaccard: {
        auto [c, ou, ov] = ancestor_counts(u, v);
        return sim(c / (c + ou + ov));
      }
      case PairwiseKind::DiceAncestors: {
        auto [c, ou, ov] = ancestor_counts(u, v);
        return sim(2.0 * c / (2.0 * c + ou + ov));
      }
      case PairwiseKind::Bulskov: {
        auto [c, ou, ov] = ancestor_counts(u, v);
        return sim(p.alpha * c / (c + ou) + (1.0 - p.alpha) * c / (c + ov));
      }
      case PairwiseKind::RodriguezEgenhofer: {
        auto [c, ou, ov] = ancestor_counts(u, v);
        return sim(c / (p.gamma * ou + (1.0 - p.gamma) * ov + c));
      }
      case PairwiseKind::SanchezDist: {
        auto [c, ou, ov] = ancestor_counts(u, v);
        return dist(std::log2(1.0 + (ou + ov) / (ou + ov + c)), true);
      }
      case PairwiseKind::TverskyRatio: {
        auto [c, ou, ov] = ancestor_counts(u, v);
        return sim(c / (p.alpha * ou + p.beta * ov + c));
      }
      case PairwiseKind::TverskyContrast: {
        auto [c, ou, ov] = ancestor_counts(u, v);
        return sim(p.gamma * c - p.alpha * ou - p.beta * ov);
      }
      case PairwiseKind::JaccardExtensional: {
        auto iu = instances(u), iv = instances(v);
        std::size_t both = 0;
        for (std::size_t i = 0, j = 0; i < iu.size() && j < iv.size();) {
          if (iu[i] < iv[j]) ++i;
          else if (iv[j] < iu[i]) ++j;
          else { ++both; ++i; ++j; }
        }
        return sim(static_cast<double>(both) / static_cast<double>(iu.size() + iv.size() - both));
      }
      case PairwiseKind::DAmatoExtensional: {
        const double m = static_cast<double>(std::min(instances(u).size(), instances(v).size()));
        const double il = static_cast<double>(instances(deepest_common_ancestor(t, u, v)).size());
        const double all = static_cast<double>(b_.usage->total());
        return sim(m / il * (1.0 - il / all) * (1.0 - m / il));
      }
      case PairwiseKind::JCHybridDist: {
        const ClassId l = mica_of(u, v);
        return dist(hybrid_cost(u, l) + hybrid_cost(v, l), false);
      }
    }
    throw Error(ErrorKind::Contract, "unknown measure");
  }

 private:
  [[nodiscard]] MeasureValue sim(double x) const { return {clean(x), Polarity::Similarity, traits_.normalized(), false}; }
  [[nodiscard]] MeasureValue dist(double x, bool normalized) const { return {clean(x), Polarity::Distance, normalized, false}; }
  [[nodiscard]] MeasureValue degenerate() const { return {0.0, traits_.polarity, traits_.normalized(), true}; }
  /// num/den, with 0/0 reported as a degenerate 0.
  [[nodiscard]] MeasureValue sim_ratio(std::pair<double, double> nd) const {
    if (nd.second == 0.0) return degenerate();
    return sim(nd.first / nd.second);
  }
  static double clean(double x) { return x == 0.0 ? 0.0 : x; }

  [[nodiscard]] double theta(ClassId c) const { return (*b_.theta)(c); }
  [[nodiscard]] ClassId mica_of(ClassId u, ClassId v) const { return mica(*t_, *b_.theta, u, v); }

  [[nodiscard]] int rada(ClassId u, ClassId v) const {
    return taxonomic_shortest_path(*t_, u, v, AncestorConstraint::ViaLCA);
  }

  /// Deepest common ancestor and the shortest upward path lengths to it.
  [[nodiscard]] std::tuple<ClassId, int, int> lca_paths(ClassId u, ClassId v) const {
    const ClassId l = deepest_common_ancestor(*t_, u, v);
    return {l, upward_path_length(*t_, u, l, PathLength::Shortest), upward_path_length(*t_, v, l, PathLength::Shortest)};
  }

  [[nodiscard]] std::pair<double, double> wu_palmer(ClassId u, ClassId v) const {
    auto [l, su, sv] = lca_paths(u, v);
    const double x = 2.0 * t_->depth(l);
    return {x, x + su + sv};
  }

  /// (|A(u) ∩ A(v)|, |A(u) \ A(v)|, |A(v) \ A(u)|)
  [[nodiscard]] std::tuple<double, double, double> ancestor_counts(ClassId u, ClassId v) const {
    auto a = t_->ancestors(u), b = t_->ancestors(v);
    std::size_t both = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
      if (a[i] < b[j]) ++i;
      else if (b[j] < a[i]) ++j;
      else { ++both; ++i; ++j; }
    }
    return {static_cast<double>(both), static_cast<double>(a.size() - both), static_cast<double>(b.size() - both)};
  }

  /// θ summed over A(u) ∩ A(v), A(u) \ A(v), A(v) \ A(u).
  [[nodiscard]] std::tuple<double, double, double> theta_sums(ClassId u, ClassId v) const {
    auto a = t_->ancestors(u), b = t_->ancestors(v);
    double common = 0.0, only_u = 0.0, only_v = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] < b[j])) only_u += theta(a[i++]);
      else if (i == a.size() || b[j] < a[i]) only_v += theta(b[j++]);
      else { common += theta(a[i]); ++i; ++j; }
    }
    return {common, only_u, only_v};
  }

  [[nodiscard]] std::span<const std::uint32_t> instances(ClassId c) const {
    auto in = b_.usage->instances(c);
    if (in.empty())
      throw Error(ErrorKind::Usage, "class '" + std::string(t_->name(c)) + "' has no instances");
    return in;
  }

  /// Shortest path weight over undirected subClassOf edges where each edge
  /// costs 1 and each switch between going up and going down costs 1 more.
  [[nodiscard]] double shenoy_weight(ClassId u, ClassId v) const {
    if (u == v) return 0.0;
    const auto& t = *t_;
    enum Dir : std::size_t { Start = 0, Up = 1, Down = 2 };
    const std::size_t n = t.size();
    std::vector<int> best(n * 3, std::numeric_limits<int>::max());
    using Item = std::tuple<int, std::size_t, std::size_t>;  // cost, node, dir
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    best[u.index() * 3 + Start] = 0;
    pq.emplace(0, u.index(), Start);
    while (!pq.empty()) {
      auto [cost, x, dir] = pq.top();
      pq.pop();
      if (cost != best[x * 3 + dir]) continue;
      if (x == v.index()) return cost;
      auto relax = [&](std::span<const ClassId> next, std::size_t nd) {
        const int step = 1 + ((dir != Start && dir != nd) ? 1 : 0);
        for (auto y : next) {
          int& b = best[y.index() * 3 + nd];
          if (cost + step < b) {
            b = cost + step;
            pq.emplace(b, y.index(), nd);
          }
        }
      };
      relax(t.parents(ClassId{x}), Up);
      relax(t.children(ClassId{x}), Down);
    }
    return std::numeric_limits<double>::infinity();  // unreachable in a rooted taxonomy
  }

  void init_root_paths() {
    const auto& t = *t_;
    root_count_.assign(t.size(), 0.0);
    root_length_.assign(t.size(), 0.0);
    for (auto c : t.topological_order()) {
      if (t.parents(c).empty()) root_count_[c.index()] = 1.0;
      for (auto p : t.parents(c)) {
        root_count_[c.index()] += root_count_[p.index()];
        root_length_[c.index()] += root_length_[p.index()] + root_count_[p.index()];
      }
    }
  }

  /// For every a ∈ A(u): number of upward paths u -> a and the sum of their
  /// lengths, aligned with ancestors(u).
  [[nodiscard]] std::pair<std::vector<double>, std::vector<double>> upward_path_counts(ClassId u) const {
    const auto& t = *t_;
    auto anc = t.ancestors(u);
    std::vector<ClassId> order(anc.begin(), anc.end());
    std::sort(order.begin(), order.end(),
              [&](ClassId a, ClassId b) { return t.topological_position(a) > t.topological_position(b); });
    auto slot = [&](ClassId c) { return static_cast<std::size_t>(std::lower_bound(anc.begin(), anc.end(), c) - anc.begin()); };
    std::vector<double> count(anc.size(), 0.0), length(anc.size(), 0.0);
    count[slot(u)] = 1.0;
    for (auto x : order) {
      const std::size_t sx = slot(x);
      if (count[sx] == 0.0) continue;
      for (auto p : t.parents(x)) {
        const std::size_t sp = slot(p);
        count[sp] += count[sx];
        length[sp] += length[sx] + count[sx];
      }
    }
    return {std::move(count), std::move(length)};
  }

  /// Average length of the root-to-u paths that pass through a.
  [[nodiscard]] double average_through(ClassId u, ClassId a, const std::pair<std::vector<double>, std::vector<double>>& up) const {
    auto anc = t_->ancestors(u);
    const auto s = static_cast<std::size_t>(std::lower_bound(anc.begin(), anc.end(), a) - anc.begin());
    const double paths = root_count_[a.index()] * up.first[s];
    if (paths > spec_.params.path_cap)
      throw Error(ErrorKind::Contract, "wang: " + format_count(paths) + " paths through '" + std::string(t_->name(a)) +
                                           "' exceed the path cap");
    return root_length_[a.index()] / root_count_[a.index()] + up.second[s] / up.first[s];
  }

  static std::string format_count(double x) { return std::to_string(static_cast<long long>(x)); }

  [[nodiscard]] MeasureValue wang(ClassId u, ClassId v) const {
    const auto omega = ncca(*t_, u, v);
    const auto up_u = upward_path_counts(u);
    const auto up_v = upward_path_counts(v);
    double total = 0.0;
    bool degenerate_term = false;
    for (auto a : omega) {
      const double da = t_->depth(a);
      const double den = average_through(u, a, up_u) * average_through(v, a, up_v);
      if (den == 0.0) {
        degenerate_term = true;
        continue;
      }
      total += 2.0 * da * da / den;
    }
    auto mv = sim(total / static_cast<double>(omega.size()));
    mv.degenerate = degenerate_term;
    return mv;
  }

  /// Minimum over upward paths u -> l of the summed hybrid edge weights.
  [[nodiscard]] double hybrid_cost(ClassId u, ClassId l) const {
    if (u == l) return 0.0;
    const auto& t = *t_;
    const auto& p = spec_.params;
    auto anc = t.ancestors(u);
    std::vector<ClassId> order;
    for (auto a : anc)
      if (t.subsumes(l, a)) order.push_back(a);
    std::sort(order.begin(), order.end(),
              [&](ClassId a, ClassId b) { return t.topological_position(a) > t.topological_position(b); });
    auto slot = [&](ClassId c) { return static_cast<std::size_t>(std::lower_bound(anc.begin(), anc.end(), c) - anc.begin()); };
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> best(anc.size(), inf);
    best[slot(u)] = 0.0;
    for (auto x : order) {
      const double bx = best[slot(x)];
      if (bx == inf) continue;
      for (auto parent : t.parents(x)) {
        if (!t.subsumes(l, parent)) continue;
        const double children = static_cast<double>(t.children(parent).size());
        const double d = std::max(1, t.depth(parent));
        const double w = (p.beta + (1.0 - p.beta) * avg_density_ / children) *
                         std::pow((d + 1.0) / d, p.alpha) * (theta(x) - theta(parent)) * p.predicate_weight;
        double& bp = best[slot(parent)];
        bp = std::min(bp, bx + w);
      }
    }
    return best[slot(l)];
  }

  void init_traits() {
    const auto k = spec_.kind;
    const auto& p = spec_.params;
    const auto& t = *t_;
    const double big_d = t.max_depth();
    const double classes = static_cast<double>(t.size());
    const double max_theta = b_.theta ? b_.theta->max_value() : 0.0;
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto& tr = traits_;
    tr.name = pairwise_name(k);
    tr.path_based = is_path_based(k);
    tr.needs_theta = needs_theta(k);
    tr.needs_usage = needs_usage(k);
    auto set = [&](Polarity pol, double lo, double hi, bool identity) {
      tr.polarity = pol;
      tr.lo = lo;
      tr.hi = hi;
      tr.identity = identity;
    };
    using P = Polarity;
    switch (k) {
      case PairwiseKind::RadaDist: set(P::Distance, 0, 2 * big_d, true); break;
      case PairwiseKind::RadaSim: set(P::Similarity, 1.0 / (2 * big_d + 1), 1, true); break;
      case PairwiseKind::ResnikEdgeBounded: set(P::Similarity, 0, 2 * big_d, true); break;
      case PairwiseKind::LeacockChodorow:
        set(P::Similarity, std::log(2 * big_d) - std::log(2 * big_d + 1), std::log(2 * big_d), true);
        break;
      case PairwiseKind::WuPalmer: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::PekarStaab: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::Zhong: set(P::Distance, 0, 1, true); break;
      case PairwiseKind::LiParametric: set(P::Similarity, 0, 1, false); break;
      case PairwiseKind::SlimaniTBK:
        if (p.lambda == 1.0) set(P::Similarity, 0, 1, false);
        else set(P::Similarity, -big_d, 0, false);
        break;
      case PairwiseKind::Shenoy: set(P::Similarity, 0, 2 * big_d, false); break;
      case PairwiseKind::ResnikIC: set(P::Similarity, 0, max_theta, false); break;
      case PairwiseKind::Lin: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::JiangConrathDist: set(P::Distance, 0, 2 * max_theta, true); break;
      case PairwiseKind::Nunivers: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::PSec: set(P::Similarity, -2 * max_theta, max_theta, false); break;
      case PairwiseKind::Faith: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::RelSchlicker: set(P::Similarity, 0, 1, false); break;
      case PairwiseKind::SimDICAncestorSum: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::JacAnc: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::LinGraSM: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::WangDCA: set(P::Similarity, 0, inf, false); break;
      case PairwiseKind::CMatchJaccard: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::DiceAncestors: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::Bulskov: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::RodriguezEgenhofer: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::SanchezDist: set(P::Distance, 0, 1, true); break;
      case PairwiseKind::TverskyRatio: set(P::Similarity, 0, 1, true); break;
      case PairwiseKind::TverskyContrast:
        set(P::Similarity, -(p.alpha + p.beta) * (classes - 1), p.gamma * classes, false);
        break;
      case PairwiseKind::JaccardExtensional: set(P::Similarity, 0, 1, false); break;  // equal instance sets tie
      case PairwiseKind::DAmatoExtensional: set(P::Similarity, 0, 0.25, false); break;
      case PairwiseKind::JCHybridDist: set(P::Distance, 0, inf, true); break;
    }
    switch (k) {
      case PairwiseKind::Bulskov: tr.symmetric = p.alpha == 0.5; break;
      case PairwiseKind::RodriguezEgenhofer: tr.symmetric = p.gamma == 0.5; break;
      case PairwiseKind::TverskyRatio:
      case PairwiseKind::TverskyContrast: tr.symmetric = p.alpha == p.beta; break;
      default: tr.symmetric = true; break;
    }
  }

  PairwiseMeasureSpec spec_;
  const TaxonomyView* t_;
  PairwiseBindings b_;
  MeasureTraits traits_;
  double avg_density_ = 0.0;
  std::vector<double> root_count_, root_length_;
};

/// One-shot evaluation; batch callers should keep a PairwiseEvaluator.
[[nodiscard]] inline MeasureValue eval_pairwise(const PairwiseMeasureSpec& spec, const TaxonomyView& t,
                                                ClassId u, ClassId v, PairwiseBindings b = {}) {
  return PairwiseEvaluator(spec, t, b)(u, v);
}

}  // namespace smx

#endif  // SMX_PAIRWISE_HPP
