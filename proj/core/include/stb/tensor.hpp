#pragma once

#include <cstdint>
#include <vector>

#include "stb/image.hpp"
#include "stb/params.hpp"

namespace stb {

// Horizontal/vertical derivatives plus the gradient magnitude rescaled so the
// image maximum maps to 100 (all zero for a constant image).
struct GradientField {
  Plane gx;
  Plane gy;
  Plane gmag_norm;
};

// Gaussian-smoothed outer product of the gradient.
struct TensorField {
  Plane t11;
  Plane t12;
  Plane t22;
  double sigma = 0.0;
};

// d <= dperp; tangent (tx, ty) is the unit eigenvector of d and points along
// edges. The normal direction is the tangent rotated by 90 degrees.
struct EigenField {
  Plane d;
  Plane dperp;
  Plane tx;
  Plane ty;
};

enum class PixelClass : std::uint8_t { kUniform = 0, kEdge = 1, kCorner = 2 };

class PixelClassMap {
 public:
  PixelClassMap() = default;
  PixelClassMap(int width, int height)
      : width_(width), height_(height),
        labels_(static_cast<std::size_t>(width) * height, PixelClass::kUniform) {}

  int width() const { return width_; }
  int height() const { return height_; }

  PixelClass& operator()(int row, int col) {
    return labels_[static_cast<std::size_t>(row) * width_ + col];
  }
  PixelClass operator()(int row, int col) const {
    return labels_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::size_t count(PixelClass label) const;

  // Uniform=0, Edge=128, Corner=255 as a gray image, for debug dumps.
  RasterImage to_image() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<PixelClass> labels_;
};

// Symmetric 1-D Gaussian sampled at integer offsets in [-radius, radius],
// radius = ceil(3 sigma), normalized to unit sum.
class GaussianKernel {
 public:
  explicit GaussianKernel(double sigma);

  double sigma() const { return sigma_; }
  int radius() const { return radius_; }
  int taps() const { return static_cast<int>(weights_.size()); }
  // offset in [-radius, radius]
  double operator[](int offset) const { return weights_[offset + radius_]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  double sigma_;
  int radius_;
  std::vector<double> weights_;
};

// One eigen system of a symmetric 2x2 matrix [[t11, t12], [t12, t22]].
struct Eigen2 {
  double d;
  double dperp;
  double tx;
  double ty;
};

GradientField compute_gradients(const Plane& image,
                                GradientMask mask = GradientMask::kCentral);

// Separable convolution, rows first then columns, replicate boundary.
Plane smooth(const Plane& field, const GaussianKernel& kernel);

TensorField compute_structure_tensor(const GradientField& grads, double sigma);

// Throws NumericalError when the matrix is not PSD within round-off.
Eigen2 eigen_decompose(double t11, double t12, double t22);
EigenField eigen_decompose(const TensorField& tensor);

// Uniform where the normalized gradient magnitude is below params.threshold
// (everything when threshold >= 100 or the image is constant). Otherwise
// Corner where d > corner_abs * max(dperp) and d / dperp > corner_ratio, else
// Edge.
PixelClassMap classify_pixels(const GradientField& grads,
                              const EigenField& eig, const StbParams& params);

}  // namespace stb
