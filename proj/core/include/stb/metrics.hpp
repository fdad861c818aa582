#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "stb/image.hpp"

namespace stb::metrics {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct MetricReport {
  double mse = 0.0;
  double psnr_db = kInfinity;
  double epsnr_db = kInfinity;
  double ssim = 1.0;
  std::size_t pixel_count = 0;
};

// All metrics require matching width, height and channel count and throw
// MetricError otherwise.
double mse(const RasterImage& x, const RasterImage& y);
double mse(const Plane& x, const Plane& y);

// 10 log10(peak^2 / mse); +inf when mse == 0.
double psnr_from_mse(double mse, double peak);
double psnr(const RasterImage& x, const RasterImage& y, double peak = 1.0);

// Magnitude of the 3x3 Sobel pair with replicate boundary. Needs >= 3x3.
Plane sobel_magnitude(const Plane& image);

// PSNR between Sobel magnitude maps. The two-argument form uses the
// original's maximum magnitude as the peak.
double epsnr(const RasterImage& original, const RasterImage& reconstructed);
double epsnr(const RasterImage& original, const RasterImage& reconstructed,
             double peak);

// Mean SSIM over all positions where an 11x11 Gaussian window (sigma 1.5)
// fits, with C1 = 0.01^2 and C2 = 0.03^2 for unit dynamic range.
double ssim(const RasterImage& x, const RasterImage& y);

// Full report on 1-channel images.
MetricReport evaluate(const RasterImage& original,
                      const RasterImage& reconstructed);

// {"mse":..,"psnr_db":..,"epsnr_db":..,"ssim":..}; infinities become "inf".
std::string to_json(const MetricReport& report);

}  // namespace stb::metrics
