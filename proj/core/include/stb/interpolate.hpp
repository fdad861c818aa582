#pragma once

#include "stb/image.hpp"
#include "stb/params.hpp"
#include "stb/tensor.hpp"

namespace stb {

// A new high-resolution pixel expressed in low-resolution coordinates
// (0-based). Output pixel (r, c) sits at (r / 2, c / 2); passthrough pixels
// have both coordinates integral and are never sites.
struct InterpolationSite {
  double ms = 0.0;  // LR row
  double ns = 0.0;  // LR column
  int c_row = 0;    // nearest lattice pixel, ties floored
  int c_col = 0;

  static InterpolationSite for_output_pixel(int out_row, int out_col);

  // The (2 radius + 1)^2 window centred on C lies inside an LR image of the
  // given size.
  bool window_fits(int radius, int lr_height, int lr_width) const;
};

// exp(-beta * |anchor - P|) for the LR pixel P = (row, col).
double distance_weight(const InterpolationSite& site, int row, int col,
                       double beta, WeightAnchor anchor = WeightAnchor::kSite);

// exp(gamma * |tangent . u|) where u is the unit vector from P = (row, col)
// to the anchor. tangent is (x, y) = (column, row) components.
double tensor_weight(const InterpolationSite& site, int row, int col,
                     double tangent_x, double tangent_y, double gamma,
                     WeightAnchor anchor = WeightAnchor::kSite);

// Normalized weighted average of the window around C. Requires
// site.window_fits(params.radius, ...).
double interpolate_site(const InterpolationSite& site, const RasterImage& lr,
                        const EigenField& eig, const StbParams& params,
                        int channel = 0);

// Bilinear blend of the lattice pixels enclosing the site.
double bilinear_at(const InterpolationSite& site, const RasterImage& lr,
                   int channel = 0);

// Plain bilinear x2 upscale to (2M-1) x (2N-1), any channel count.
RasterImage bilinear_upscale(const RasterImage& lr);

// Everything STB derives from the low-resolution luma before interpolating.
struct StbAnalysis {
  GradientField gradients;
  TensorField tensor;
  EigenField eigen;
  PixelClassMap classes;
};

StbAnalysis analyze(const Plane& luma, const StbParams& params);

// x2 structure-tensor upscale to (2M-1) x (2N-1). Multi-channel input is
// analyzed on its luma and every channel shares the same weights. Requires at
// least (2D+2) x (2D+2) input. threads = 0 picks the hardware concurrency.
RasterImage stb_upscale(const RasterImage& lr, const StbParams& params,
                        unsigned threads = 1);
RasterImage stb_upscale(const RasterImage& lr, const StbAnalysis& analysis,
                        const StbParams& params, unsigned threads = 1);

}  // namespace stb
