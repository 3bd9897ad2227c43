#ifndef SMX_MEASURE_VALUE_HPP
#define SMX_MEASURE_VALUE_HPP

#include <cmath>

#include "smx/error.hpp"

namespace smx {

enum class Polarity { Similarity, Distance };

struct MeasureValue {
  double value = 0.0;
  Polarity polarity = Polarity::Similarity;
  bool normalized = false;  // value in [0, 1]
  bool degenerate = false;  // formula undefined here (0/0); value set to 0
};

enum class ConversionRule { OneMinus, Ratio, NegLog, Reciprocal };

/// Distance <-> similarity conversions: 1 − s, (1 − s)/s, −ln s for
/// normalized similarities, and 1/(d + 1) for distances.
[[nodiscard]] inline MeasureValue convert(const MeasureValue& mv, Polarity target, ConversionRule rule) {
  if (rule == ConversionRule::Reciprocal) {
    if (mv.polarity != Polarity::Distance || target != Polarity::Similarity)
      throw Error(ErrorKind::Contract, "reciprocal conversion maps a distance to a similarity");
    if (!(mv.value >= 0.0)) throw Error(ErrorKind::Contract, "distance must be non-negative");
    return {1.0 / (mv.value + 1.0), Polarity::Similarity, true, mv.degenerate};
  }
  if (mv.polarity != Polarity::Similarity || target != Polarity::Distance)
    throw Error(ErrorKind::Contract, "this rule maps a similarity to a distance");
  if (!mv.normalized || mv.value < 0.0 || mv.value > 1.0)
    throw Error(ErrorKind::Contract, "similarity must be normalized to [0, 1]");
  const double s = mv.value;
  switch (rule) {
    case ConversionRule::OneMinus:
      return {1.0 - s, Polarity::Distance, true, mv.degenerate};
    case ConversionRule::Ratio:
      if (s == 0.0) throw Error(ErrorKind::Contract, "ratio conversion is infinite at similarity 0");
      return {(1.0 - s) / s, Polarity::Distance, false, mv.degenerate};
    case ConversionRule::NegLog:
      if (s == 0.0) throw Error(ErrorKind::Contract, "negative log is infinite at similarity 0");
      return {s == 1.0 ? 0.0 : -std::log(s), Polarity::Distance, false, mv.degenerate};
    case ConversionRule::Reciprocal: break;
  }
  throw Error(ErrorKind::Contract, "unknown conversion rule");
}

}  // namespace smx

#endif  // SMX_MEASURE_VALUE_HPP
