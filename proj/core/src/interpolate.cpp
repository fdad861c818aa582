#include "stb/interpolate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stb/error.hpp"
#include "stb/parallel.hpp"

namespace stb {
namespace {

struct Anchor {
  double row;
  double col;
};

Anchor anchor_of(const InterpolationSite& site, WeightAnchor anchor) {
  if (anchor == WeightAnchor::kNearest) {
    return {static_cast<double>(site.c_row), static_cast<double>(site.c_col)};
  }
  return {site.ms, site.ns};
}

// Log of W_d * W_T for one neighbor.
double log_weight(Anchor a, int row, int col, double tx, double ty,
                  double beta, double gamma) {
  const double dy = a.row - row;
  const double dx = a.col - col;
  const double dist = std::hypot(dx, dy);
  if (dist == 0.0) return gamma;  // neighbor is the anchor itself
  const double align = std::abs(tx * dx / dist + ty * dy / dist);
  return -beta * dist + gamma * align;
}

// Normalized window weights, row-major over the (2D+1)^2 window around C.
void window_weights(const InterpolationSite& site, const EigenField& eig,
                    const StbParams& params, std::vector<double>& weights) {
  const int radius = params.radius;
  const int side = 2 * radius + 1;
  weights.resize(static_cast<std::size_t>(side) * side);
  const Anchor a = anchor_of(site, params.anchor);
  double peak = -std::numeric_limits<double>::infinity();
  std::size_t k = 0;
  for (int i = site.c_row - radius; i <= site.c_row + radius; ++i) {
    for (int j = site.c_col - radius; j <= site.c_col + radius; ++j) {
      const double lw = log_weight(a, i, j, eig.tx(i, j), eig.ty(i, j),
                                   params.beta, params.gamma);
      weights[k++] = lw;
      peak = std::max(peak, lw);
    }
  }
  // Shifting by the peak exponent keeps large gamma from overflowing; the
  // normalized result is unchanged.
  double sum = 0.0;
  for (double& w : weights) {
    w = std::exp(w - peak);
    sum += w;
  }
  for (double& w : weights) w /= sum;
}

double apply_weights(const InterpolationSite& site, const RasterImage& lr,
                     int radius, const std::vector<double>& weights,
                     int channel) {
  double acc = 0.0;
  double lo = 1.0;
  double hi = 0.0;
  std::size_t k = 0;
  for (int i = site.c_row - radius; i <= site.c_row + radius; ++i) {
    for (int j = site.c_col - radius; j <= site.c_col + radius; ++j) {
      const double v = lr(i, j, channel);
      acc += weights[k++] * v;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return std::clamp(acc, lo, hi);
}

void check_site_inputs(const InterpolationSite& site, const RasterImage& lr,
                       const EigenField& eig, const StbParams& params) {
  if (!site.window_fits(params.radius, lr.height(), lr.width())) {
    throw DimensionError("interpolation window leaves the image");
  }
  if (eig.tx.width() != lr.width() || eig.tx.height() != lr.height()) {
    throw DimensionError("eigen field does not match the image");
  }
}

}  // namespace

InterpolationSite InterpolationSite::for_output_pixel(int out_row,
                                                      int out_col) {
  if (out_row < 0 || out_col < 0) {
    throw ParameterError("output coordinates must be non-negative");
  }
  if (out_row % 2 == 0 && out_col % 2 == 0) {
    throw ParameterError("lattice pixel (" + std::to_string(out_row) + ", " +
                         std::to_string(out_col) +
                         ") is a passthrough, not a site");
  }
  return {out_row / 2.0, out_col / 2.0, out_row / 2, out_col / 2};
}

bool InterpolationSite::window_fits(int radius, int lr_height,
                                    int lr_width) const {
  return c_row - radius >= 0 && c_row + radius <= lr_height - 1 &&
         c_col - radius >= 0 && c_col + radius <= lr_width - 1;
}

double distance_weight(const InterpolationSite& site, int row, int col,
                       double beta, WeightAnchor anchor) {
  const Anchor a = anchor_of(site, anchor);
  return std::exp(-beta * std::hypot(a.row - row, a.col - col));
}

double tensor_weight(const InterpolationSite& site, int row, int col,
                     double tangent_x, double tangent_y, double gamma,
                     WeightAnchor anchor) {
  const Anchor a = anchor_of(site, anchor);
  const double dy = a.row - row;
  const double dx = a.col - col;
  const double dist = std::hypot(dx, dy);
  if (dist == 0.0) return std::exp(gamma);
  return std::exp(gamma *
                  std::abs(tangent_x * dx / dist + tangent_y * dy / dist));
}

double interpolate_site(const InterpolationSite& site, const RasterImage& lr,
                        const EigenField& eig, const StbParams& params,
                        int channel) {
  check_site_inputs(site, lr, eig, params);
  std::vector<double> weights;
  window_weights(site, eig, params, weights);
  return apply_weights(site, lr, params.radius, weights, channel);
}

double bilinear_at(const InterpolationSite& site, const RasterImage& lr,
                   int channel) {
  const int r0 = static_cast<int>(std::floor(site.ms));
  const int c0 = static_cast<int>(std::floor(site.ns));
  if (r0 < 0 || c0 < 0 || r0 > lr.height() - 1 || c0 > lr.width() - 1 ||
      site.ms > lr.height() - 1 || site.ns > lr.width() - 1) {
    throw DimensionError("bilinear site outside the image");
  }
  const int r1 = std::min(r0 + 1, lr.height() - 1);
  const int c1 = std::min(c0 + 1, lr.width() - 1);
  const double fr = site.ms - r0;
  const double fc = site.ns - c0;
  return (1.0 - fr) * (1.0 - fc) * lr(r0, c0, channel) +
         (1.0 - fr) * fc * lr(r0, c1, channel) +
         fr * (1.0 - fc) * lr(r1, c0, channel) + fr * fc * lr(r1, c1, channel);
}

RasterImage bilinear_upscale(const RasterImage& lr) {
  const int out_h = 2 * lr.height() - 1;
  const int out_w = 2 * lr.width() - 1;
  RasterImage out(out_w, out_h, lr.channels());
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      for (int ch = 0; ch < lr.channels(); ++ch) {
        if (r % 2 == 0 && c % 2 == 0) {
          out(r, c, ch) = lr(r / 2, c / 2, ch);
        } else {
          out(r, c, ch) =
              bilinear_at(InterpolationSite::for_output_pixel(r, c), lr, ch);
        }
      }
    }
  }
  return out;
}

StbAnalysis analyze(const Plane& luma, const StbParams& params) {
  params.validate();
  StbAnalysis a;
  a.gradients = compute_gradients(luma, params.gradient_mask);
  a.tensor = compute_structure_tensor(a.gradients, params.sigma);
  a.eigen = eigen_decompose(a.tensor);
  a.classes = classify_pixels(a.gradients, a.eigen, params);
  return a;
}

RasterImage stb_upscale(const RasterImage& lr, const StbParams& params,
                        unsigned threads) {
  params.validate();
  const int min_side = 2 * params.radius + 2;
  if (lr.width() < min_side || lr.height() < min_side) {
    throw DimensionError("STB needs at least " + std::to_string(min_side) +
                         "x" + std::to_string(min_side) + " input, got " +
                         std::to_string(lr.width()) + "x" +
                         std::to_string(lr.height()));
  }
  return stb_upscale(lr, analyze(to_grayscale(lr).plane(0), params), params,
                     threads);
}

RasterImage stb_upscale(const RasterImage& lr, const StbAnalysis& analysis,
                        const StbParams& params, unsigned threads) {
  params.validate();
  const int min_side = 2 * params.radius + 2;
  if (lr.width() < min_side || lr.height() < min_side) {
    throw DimensionError("STB needs at least " + std::to_string(min_side) +
                         "x" + std::to_string(min_side) + " input");
  }
  if (analysis.classes.width() != lr.width() ||
      analysis.classes.height() != lr.height() ||
      analysis.eigen.tx.width() != lr.width() ||
      analysis.eigen.tx.height() != lr.height()) {
    throw DimensionError("analysis does not match the input image");
  }
  const int out_h = 2 * lr.height() - 1;
  const int out_w = 2 * lr.width() - 1;
  const int channels = lr.channels();
  RasterImage out(out_w, out_h, channels);

  parallel_for(0, out_h, threads, [&](int r) {
    std::vector<double> weights;
    for (int c = 0; c < out_w; ++c) {
      if (r % 2 == 0 && c % 2 == 0) {
        for (int ch = 0; ch < channels; ++ch) {
          out(r, c, ch) = lr(r / 2, c / 2, ch);
        }
        continue;
      }
      const auto site = InterpolationSite::for_output_pixel(r, c);
      const bool edge =
          analysis.classes(site.c_row, site.c_col) == PixelClass::kEdge;
      if (edge && site.window_fits(params.radius, lr.height(), lr.width())) {
        window_weights(site, analysis.eigen, params, weights);
        for (int ch = 0; ch < channels; ++ch) {
          out(r, c, ch) = apply_weights(site, lr, params.radius, weights, ch);
        }
      } else {
        for (int ch = 0; ch < channels; ++ch) {
          out(r, c, ch) = bilinear_at(site, lr, ch);
        }
      }
    }
  });
  return out;
}

}  // namespace stb
