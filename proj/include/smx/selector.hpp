#ifndef SMX_SELECTOR_HPP
#define SMX_SELECTOR_HPP

// The `name[:key=value,...]` grammar used to pick measures and estimators on
// the command line, and the name tables behind it.

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "smx/groupwise.hpp"
#include "smx/ingest.hpp"
#include "smx/pairwise.hpp"
#include "smx/specificity.hpp"
#include "smx/unify.hpp"

namespace smx {

/// Malformed or unknown selector. Distinct from smx::Error: the CLI reports
/// it as a usage error.
class SelectorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Selector {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::string text;  // as written

  [[nodiscard]] std::optional<std::string> get(std::string_view key) const {
    for (const auto& [k, v] : params)
      if (k == key) return v;
    return std::nullopt;
  }

  [[nodiscard]] double number(std::string_view key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    if (*v == "-inf") return -std::numeric_limits<double>::infinity();
    if (*v == "inf" || *v == "+inf") return std::numeric_limits<double>::infinity();
    auto x = detail::parse_number(*v);
    if (!x) throw SelectorError("'" + text + "': " + std::string(key) + " must be a number, got '" + *v + "'");
    return *x;
  }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : params) {
      bool ok = false;
      for (auto a : keys) ok = ok || a == k;
      if (!ok) throw SelectorError("'" + text + "': unknown parameter '" + k + "'");
    }
  }
};

/// Parses `name[:key=value,...]`. Everything after the first ':' that holds
/// no '=' is kept as a nested selector under the key "" (e.g. `bma:lin`).
[[nodiscard]] inline Selector parse_selector(std::string_view text) {
  Selector s;
  s.text = std::string(text);
  const auto colon = text.find(':');
  s.name = std::string(text.substr(0, colon));
  if (s.name.empty()) throw SelectorError("empty selector name in '" + s.text + "'");
  if (colon == std::string_view::npos) return s;
  const auto rest = text.substr(colon + 1);
  const auto first_eq = rest.find('=');
  const auto first_colon = rest.find(':');
  if (first_eq == std::string_view::npos || (first_colon != std::string_view::npos && first_colon < first_eq)) {
    s.params.emplace_back("", std::string(rest));
    return s;
  }
  for (auto item : detail::split(rest, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
      throw SelectorError("expected key=value in '" + s.text + "'");
    s.params.emplace_back(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
  }
  return s;
}

/// Splits a comma-separated measure list. A token containing '=' continues
/// the parameter list of the previous measure: `lin:ic=seco,li:alpha=1,beta=2,rada`.
[[nodiscard]] inline std::vector<Selector> parse_selector_list(std::string_view text) {
  std::vector<std::string> items;
  for (auto tok : detail::split(text, ',')) {
    if (tok.empty()) throw SelectorError("empty entry in measure list '" + std::string(text) + "'");
    if (tok.find('=') != std::string_view::npos && tok.find(':') == std::string_view::npos && !items.empty())
      items.back() += "," + std::string(tok);
    else
      items.emplace_back(tok);
  }
  std::vector<Selector> out;
  for (const auto& i : items) out.push_back(parse_selector(i));
  return out;
}

[[nodiscard]] inline std::string join_names(const std::vector<std::string_view>& names) {
  std::string out;
  for (auto n : names) out += (out.empty() ? "" : ", ") + std::string(n);
  return out;
}

[[nodiscard]] inline std::vector<std::string_view> pairwise_names() {
  std::vector<std::string_view> out;
  for (auto k : kAllPairwiseKinds) out.push_back(pairwise_name(k));
  return out;
}

/// Pairwise measure from a selector such as `li:alpha=0.2,beta=0.6`. The key
/// `ic` is accepted and left to the caller (θ choice).
[[nodiscard]] inline PairwiseMeasureSpec pairwise_spec_from(const Selector& s) {
  auto kind = pairwise_kind_from_name(s.name);
  if (!kind) throw SelectorError("unknown measure '" + s.name + "'; valid measures: " + join_names(pairwise_names()));
  s.allow_only({"ic", "alpha", "beta", "gamma", "k", "lambda", "weight", "cap"});
  auto spec = PairwiseMeasureSpec::make(*kind);
  auto& p = spec.params;
  p.alpha = s.number("alpha", p.alpha);
  p.beta = s.number("beta", p.beta);
  p.gamma = s.number("gamma", p.gamma);
  p.k = s.number("k", p.k);
  p.lambda = s.number("lambda", p.lambda);
  p.predicate_weight = s.number("weight", p.predicate_weight);
  p.path_cap = s.number("cap", p.path_cap);
  return spec;
}

struct ThetaChoice {
  ThetaKind kind = ThetaKind::ICSeco;
  ThetaOptions options;
};

[[nodiscard]] inline std::vector<std::string_view> theta_names() {
  return {"seco", "zhou", "resnik", "idf", "resnik-intrinsic", "sanchez", "sanchez-refined", "depth",
          "depth-nonlinear", "depth-raw"};
}

/// θ from `seco`, `zhou:k=0.6`, `ic:seco`, `ic:zhou:k=0.6`, ...
[[nodiscard]] inline ThetaChoice theta_from(std::string_view text, ThetaOptions base = {}) {
  if (text.substr(0, 3) == "ic:") text.remove_prefix(3);
  const Selector s = parse_selector(text);
  ThetaChoice c;
  c.options = base;
  if (s.name == "seco") c.kind = ThetaKind::ICSeco;
  else if (s.name == "zhou") c.kind = ThetaKind::ICZhou;
  else if (s.name == "resnik") c.kind = ThetaKind::ICResnikExtrinsic;
  else if (s.name == "idf") c.kind = ThetaKind::IDF;
  else if (s.name == "resnik-intrinsic") c.kind = ThetaKind::ICResnikIntrinsic;
  else if (s.name == "sanchez") c.kind = ThetaKind::ICSanchezLeaves;
  else if (s.name == "sanchez-refined") c.kind = ThetaKind::ICSanchezRefined;
  else if (s.name == "depth") c.kind = ThetaKind::DepthNormalized;
  else if (s.name == "depth-nonlinear") c.kind = ThetaKind::DepthNonLinear;
  else if (s.name == "depth-raw") c.kind = ThetaKind::DepthRaw;
  else throw SelectorError("unknown estimator '" + s.name + "'; valid estimators: " + join_names(theta_names()));
  s.allow_only(c.kind == ThetaKind::ICZhou ? std::initializer_list<std::string_view>{"k"}
                                           : std::initializer_list<std::string_view>{});
  if (c.kind == ThetaKind::ICZhou) c.options.zhou_k = s.number("k", c.options.zhou_k);
  return c;
}

/// `simui`, `nto`, `simgic`, or `<strategy>:<pairwise selector>` such as
/// `bma:lin` or `avg:li:alpha=0.5`.
[[nodiscard]] inline GroupwiseMeasureSpec groupwise_spec_from(std::string_view text, Selector* inner = nullptr) {
  const Selector s = parse_selector(text);
  GroupwiseMeasureSpec g;
  if (s.name == "simui" || s.name == "nto" || s.name == "simgic") {
    s.allow_only({});
    g.kind = s.name == "simui" ? GroupwiseKind::SimUI : s.name == "nto" ? GroupwiseKind::NTO : GroupwiseKind::SimGIC;
    return g;
  }
  auto strategy = strategy_from_name(s.name);
  if (!strategy)
    throw SelectorError("unknown groupwise measure '" + s.name +
                        "'; valid: simui, nto, simgic, or avg|max|min|avgmax|bmm|bma:<pairwise measure>");
  auto nested = s.get("");
  if (!nested) throw SelectorError("'" + s.text + "' needs an inner pairwise measure, e.g. " + s.name + ":lin");
  const Selector in = parse_selector(*nested);
  g.kind = GroupwiseKind::Aggregate;
  g.strategy = *strategy;
  g.inner = pairwise_spec_from(in);
  if (inner) *inner = in;
  return g;
}

struct AbstractChoice {
  AbstractForm form;
  std::optional<ThetaKind> theta;
};

/// Named instantiations (`lin`, `dice`, `simpson`, ...) or raw forms
/// (`abstract-dist`, `g-dice`, `sigma-alpha:alpha=`, `sigma-beta:beta=`,
/// `ratio:alpha=,beta=`, `contrast:gamma=,alpha=,beta=`).
[[nodiscard]] inline AbstractChoice abstract_form_from(std::string_view text) {
  const Selector s = parse_selector(text);
  if (auto named = named_measure_from_name(s.name)) {
    s.allow_only({});
    auto inst = instantiate(*named);
    return {inst.form, inst.theta};
  }
  AbstractForm f;
  if (s.name == "abstract-dist") {
    s.allow_only({});
    f.kind = AbstractKind::AbstractDist;
  } else if (s.name == "g-dice") {
    s.allow_only({});
    f.kind = AbstractKind::GeneralDice;
  } else if (s.name == "sigma-alpha") {
    s.allow_only({"alpha"});
    if (!s.get("alpha")) throw SelectorError("sigma-alpha needs alpha=");
    f.kind = AbstractKind::SigmaAlpha;
    f.alpha = s.number("alpha", 0.0);
  } else if (s.name == "sigma-beta") {
    s.allow_only({"beta"});
    f.kind = AbstractKind::SigmaBeta;
    f.beta = s.number("beta", 1.0);
  } else if (s.name == "ratio") {
    s.allow_only({"alpha", "beta"});
    f.kind = AbstractKind::RatioModel;
    f.alpha = s.number("alpha", 1.0);
    f.beta = s.number("beta", 1.0);
  } else if (s.name == "contrast") {
    s.allow_only({"gamma", "alpha", "beta"});
    f.kind = AbstractKind::ContrastModel;
    f.gamma = s.number("gamma", 1.0);
    f.alpha = s.number("alpha", 0.5);
    f.beta = s.number("beta", 0.5);
  } else {
    throw SelectorError("unknown form '" + s.name +
                        "'; valid forms: lin, wupalmer-tree, faith, jc, jaccard, dice, sokal-sneath, simpson, ochiai, "
                        "abstract-dist, g-dice, sigma-alpha, sigma-beta, ratio, contrast");
  }
  return {f, std::nullopt};
}

}  // namespace smx

#endif  // SMX_SELECTOR_HPP
