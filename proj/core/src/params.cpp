#include "stb/params.hpp"

#include <cmath>
#include <string>

#include "stb/error.hpp"

namespace stb {

void StbParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("sigma must be > 0");
  }
  if (radius < 1) throw ParameterError("neighborhood half-size D must be >= 1");
  if (!(beta >= 0.0)) throw ParameterError("beta must be >= 0");
  if (!(gamma >= 0.0)) throw ParameterError("gamma must be >= 0");
  if (!(threshold >= 0.0 && threshold <= 100.0)) {
    throw ParameterError("threshold must be in [0,100]");
  }
  if (!(corner_ratio >= 0.0 && corner_ratio <= 1.0)) {
    throw ParameterError("corner_ratio must be in [0,1]");
  }
  if (!(corner_abs >= 0.0)) throw ParameterError("corner_abs must be >= 0");
}

GradientMask parse_gradient_mask(std::string_view name) {
  if (name == "central") return GradientMask::kCentral;
  if (name == "sobel") return GradientMask::kSobel;
  throw ParameterError("unknown gradient mask '" + std::string(name) + "'");
}

WeightAnchor parse_weight_anchor(std::string_view name) {
  if (name == "site") return WeightAnchor::kSite;
  if (name == "nearest") return WeightAnchor::kNearest;
  throw ParameterError("unknown weight anchor '" + std::string(name) + "'");
}

}  // namespace stb
