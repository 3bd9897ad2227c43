#ifndef SMX_UNIFY_HPP
#define SMX_UNIFY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "smx/error.hpp"
#include "smx/measure_value.hpp"
#include "smx/specificity.hpp"
#include "smx/taxonomy.hpp"

namespace smx {

enum class AbstractKind { AbstractDist, GeneralDice, SigmaAlpha, SigmaBeta, RatioModel, ContrastModel };

/// How the commonality f(U ∩ V) and the saliences f(U), f(V) are read off θ.
enum class Commonality {
  MicaTheta,               // f(U) = θ(u), f(U ∩ V) = θ(MICA_θ(u, v))
  SharedAncestorSalience,  // f(U) = Σ θ over A(u), f(U ∩ V) = Σ θ over A(u) ∩ A(v)
};

struct AbstractForm {
  AbstractKind kind = AbstractKind::GeneralDice;
  double alpha = 0.0;  // SigmaAlpha exponent (may be ±infinity); Ratio/Contrast weight of f(U \ V)
  double beta = 0.0;   // SigmaBeta; Ratio/Contrast weight of f(V \ U)
  double gamma = 0.0;  // Contrast weight of f(U ∩ V)
  Commonality commonality = Commonality::MicaTheta;
};

enum class NamedMeasure { Lin, WuPalmerTree, Faith, JiangConrathDist, Jaccard, Dice, SokalSneath, Simpson, Ochiai };

struct Instantiation {
  AbstractForm form;
  std::optional<ThetaKind> theta;  // set when the measure fixes θ
};

[[nodiscard]] inline Instantiation instantiate(NamedMeasure name) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  switch (name) {
    case NamedMeasure::Lin: return {{AbstractKind::GeneralDice}, std::nullopt};
    case NamedMeasure::WuPalmerTree: return {{AbstractKind::GeneralDice}, ThetaKind::DepthRaw};
    case NamedMeasure::Faith: return {{AbstractKind::RatioModel, 1.0, 1.0}, std::nullopt};
    case NamedMeasure::JiangConrathDist: return {{AbstractKind::AbstractDist}, std::nullopt};
    case NamedMeasure::Jaccard: return {{AbstractKind::SigmaBeta, 0.0, 1.0}, std::nullopt};
    case NamedMeasure::Dice: return {{AbstractKind::SigmaBeta, 0.0, 2.0}, std::nullopt};
    case NamedMeasure::SokalSneath: return {{AbstractKind::SigmaBeta, 0.0, 0.5}, std::nullopt};
    case NamedMeasure::Simpson: return {{AbstractKind::SigmaAlpha, -inf}, std::nullopt};
    case NamedMeasure::Ochiai: return {{AbstractKind::SigmaAlpha, 0.0}, std::nullopt};
  }
  throw Error(ErrorKind::Contract, "unknown named measure");
}

[[nodiscard]] inline std::optional<NamedMeasure> named_measure_from_name(std::string_view s) {
  if (s == "lin") return NamedMeasure::Lin;
  if (s == "wupalmer-tree") return NamedMeasure::WuPalmerTree;
  if (s == "faith") return NamedMeasure::Faith;
  if (s == "jc") return NamedMeasure::JiangConrathDist;
  if (s == "jaccard") return NamedMeasure::Jaccard;
  if (s == "dice") return NamedMeasure::Dice;
  if (s == "sokal-sneath") return NamedMeasure::SokalSneath;
  if (s == "simpson") return NamedMeasure::Simpson;
  if (s == "ochiai") return NamedMeasure::Ochiai;
  return std::nullopt;
}

/// Power mean ((x^a + y^a) / 2)^(1/a), with the usual limits at a = 0
/// (geometric mean) and a = ±infinity (min / max).
[[nodiscard]] inline double power_mean(double x, double y, double a) {
  if (a == -std::numeric_limits<double>::infinity()) return std::min(x, y);
  if (a == std::numeric_limits<double>::infinity()) return std::max(x, y);
  if (a == 0.0) return std::sqrt(x * y);
  if (a < 0.0 && (x == 0.0 || y == 0.0)) return 0.0;
  return std::pow((std::pow(x, a) + std::pow(y, a)) / 2.0, 1.0 / a);
}

class AbstractEvaluator {
 public:
  AbstractEvaluator(AbstractForm form, const ThetaEstimator& theta) : form_{form}, theta_{&theta} {
    if (!theta.monotone())
      throw Error(ErrorKind::Contract, "θ '" + theta.label() + "' is not monotone over the taxonomy");
    const bool nonneg = form_.alpha >= 0.0 && form_.beta >= 0.0 && form_.gamma >= 0.0;
    switch (form_.kind) {
      case AbstractKind::SigmaAlpha:
        if (std::isnan(form_.alpha)) throw Error(ErrorKind::Contract, "sigma-alpha needs an exponent");
        break;
      case AbstractKind::SigmaBeta:
        if (!(form_.beta > 0.0)) throw Error(ErrorKind::Contract, "sigma-beta needs beta > 0");
        break;
      case AbstractKind::RatioModel:
      case AbstractKind::ContrastModel:
        if (!nonneg) throw Error(ErrorKind::Contract, "Tversky weights must be >= 0");
        break;
      default: break;
    }
  }

  [[nodiscard]] Polarity polarity() const {
    return form_.kind == AbstractKind::AbstractDist ? Polarity::Distance : Polarity::Similarity;
  }

  [[nodiscard]] MeasureValue operator()(ClassId u, ClassId v) const {
    const auto& t = theta_->taxonomy();
    t.check(u);
    t.check(v);
    double fu = 0.0, fv = 0.0, fc = 0.0;
    if (form_.commonality == Commonality::MicaTheta) {
      fu = (*theta_)(u);
      fv = (*theta_)(v);
      fc = (*theta_)(mica(t, *theta_, u, v));
    } else {
      auto a = t.ancestors(u), b = t.ancestors(v);
      for (auto c : a) fu += (*theta_)(c);
      for (auto c : b) fv += (*theta_)(c);
      for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i] < b[j]) ++i;
        else if (b[j] < a[i]) ++j;
        else { fc += (*theta_)(a[i]); ++i; ++j; }
      }
    }
    const double du = fu - fc, dv = fv - fc;
    auto ratio = [](double num, double den) -> MeasureValue {
      if (den == 0.0) return {0.0, Polarity::Similarity, false, true};
      return {num / den, Polarity::Similarity, false, false};
    };
    switch (form_.kind) {
      case AbstractKind::AbstractDist: return {std::max(0.0, fu + fv - 2.0 * fc), Polarity::Distance, false, false};
      case AbstractKind::GeneralDice: return ratio(2.0 * fc, fu + fv);
      case AbstractKind::SigmaAlpha: return ratio(fc, power_mean(fu, fv, form_.alpha));
      case AbstractKind::SigmaBeta: return ratio(form_.beta * fc, fu + fv + (form_.beta - 2.0) * fc);
      case AbstractKind::RatioModel: return ratio(fc, form_.alpha * du + form_.beta * dv + fc);
      case AbstractKind::ContrastModel:
        return {form_.gamma * fc - form_.alpha * du - form_.beta * dv, Polarity::Similarity, false, false};
    }
    throw Error(ErrorKind::Contract, "unknown abstract form");
  }

 private:
  AbstractForm form_;
  const ThetaEstimator* theta_;
};

[[nodiscard]] inline MeasureValue eval_abstract(const AbstractForm& form, const ThetaEstimator& theta, ClassId u, ClassId v) {
  return AbstractEvaluator(form, theta)(u, v);
}

}  // namespace smx

#endif  // SMX_UNIFY_HPP
