#pragma once

#include <string_view>

namespace stb {

enum class GradientMask { kCentral, kSobel };

// Which point the STB weights measure distances and directions from.
//   kSite:    the interpolation site itself (default).
//   kNearest: the nearest lattice pixel C, with W_d(C) = 1 and
//             W_T(C) = exp(gamma).
enum class WeightAnchor { kSite, kNearest };

struct StbParams {
  double sigma = 2.0;      // structure tensor smoothing scale, pixels
  int radius = 2;          // neighborhood half-size D
  double beta = 5.0;       // distance decay
  double gamma = 10.0;     // alignment gain
  double threshold = 20.0; // uniform threshold on the [0,100] gradient scale
  double corner_ratio = 0.5;
  double corner_abs = 0.01;
  GradientMask gradient_mask = GradientMask::kCentral;
  WeightAnchor anchor = WeightAnchor::kSite;

  // Throws ParameterError on out-of-range fields.
  void validate() const;
};

GradientMask parse_gradient_mask(std::string_view name);
WeightAnchor parse_weight_anchor(std::string_view name);

}  // namespace stb
