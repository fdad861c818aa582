#include "stb/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stb/error.hpp"

namespace stb {

std::size_t PixelClassMap::count(PixelClass label) const {
  return static_cast<std::size_t>(
      std::count(labels_.begin(), labels_.end(), label));
}

RasterImage PixelClassMap::to_image() const {
  RasterImage out(width_, height_, 1);
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      switch ((*this)(r, c)) {
        case PixelClass::kUniform: out(r, c) = 0.0; break;
        case PixelClass::kEdge: out(r, c) = 128.0 / 255.0; break;
        case PixelClass::kCorner: out(r, c) = 1.0; break;
      }
    }
  }
  return out;
}

GaussianKernel::GaussianKernel(double sigma) : sigma_(sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ParameterError("Gaussian sigma must be > 0, got " +
                         std::to_string(sigma));
  }
  radius_ = static_cast<int>(std::ceil(3.0 * sigma));
  weights_.resize(2 * radius_ + 1);
  double sum = 0.0;
  for (int x = -radius_; x <= radius_; ++x) {
    const double w = std::exp(-(x * x) / (2.0 * sigma * sigma));
    weights_[x + radius_] = w;
    sum += w;
  }
  for (double& w : weights_) w /= sum;
}

GradientField compute_gradients(const Plane& image, GradientMask mask) {
  const int w = image.width();
  const int h = image.height();
  if (w < 2 || h < 2) {
    throw DimensionError("gradients need at least 2x2 pixels");
  }
  GradientField out{Plane(w, h), Plane(w, h), Plane(w, h)};
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double gx, gy;
      if (mask == GradientMask::kCentral) {
        gx = (image.clamped(r, c + 1) - image.clamped(r, c - 1)) / 2.0;
        gy = (image.clamped(r + 1, c) - image.clamped(r - 1, c)) / 2.0;
      } else {
        const double a = image.clamped(r - 1, c - 1);
        const double b = image.clamped(r - 1, c);
        const double cc = image.clamped(r - 1, c + 1);
        const double d = image.clamped(r, c - 1);
        const double f = image.clamped(r, c + 1);
        const double g = image.clamped(r + 1, c - 1);
        const double hh = image.clamped(r + 1, c);
        const double i = image.clamped(r + 1, c + 1);
        gx = ((cc + 2.0 * f + i) - (a + 2.0 * d + g)) / 8.0;
        gy = ((g + 2.0 * hh + i) - (a + 2.0 * b + cc)) / 8.0;
      }
      out.gx(r, c) = gx;
      out.gy(r, c) = gy;
      out.gmag_norm(r, c) = std::sqrt(gx * gx + gy * gy);
    }
  }
  const double peak = out.gmag_norm.max();
  for (double& g : out.gmag_norm.data()) g = peak > 0.0 ? 100.0 * g / peak : 0.0;
  return out;
}

Plane smooth(const Plane& field, const GaussianKernel& kernel) {
  const int w = field.width();
  const int h = field.height();
  const int radius = kernel.radius();
  Plane rows(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k] * field(r, std::clamp(c + k, 0, w - 1));
      }
      rows(r, c) = acc;
    }
  }
  Plane out(w, h);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += kernel[k] * rows(std::clamp(r + k, 0, h - 1), c);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

TensorField compute_structure_tensor(const GradientField& grads, double sigma) {
  const GaussianKernel kernel(sigma);
  const int w = grads.gx.width();
  const int h = grads.gx.height();
  Plane xx(w, h), xy(w, h), yy(w, h);
  for (std::size_t i = 0; i < xx.size(); ++i) {
    const double gx = grads.gx.data()[i];
    const double gy = grads.gy.data()[i];
    xx.data()[i] = gx * gx;
    xy.data()[i] = gx * gy;
    yy.data()[i] = gy * gy;
  }
  return {smooth(xx, kernel), smooth(xy, kernel), smooth(yy, kernel), sigma};
}

Eigen2 eigen_decompose(double t11, double t12, double t22) {
  const double trace = t11 + t22;
  const double scale = std::abs(t11) + std::abs(t22);
  const double det = t11 * t22 - t12 * t12;
  if (t11 < -1e-9 * scale || t22 < -1e-9 * scale ||
      det < -1e-9 * scale * scale) {
    throw NumericalError("structure tensor is not positive semi-definite: [" +
                         std::to_string(t11) + ", " + std::to_string(t12) +
                         "; " + std::to_string(t22) + "]");
  }
  const double diff = t22 - t11;
  const double root = std::sqrt(diff * diff + 4.0 * t12 * t12);
  Eigen2 e{0.5 * (trace - root), 0.5 * (trace + root), 0.0, 0.0};

  // For t11 <= t22 the closed form (t22 - t11 + root, -2 t12) has no
  // cancellation. Otherwise use the equivalent (-2 t12, t11 - t22 + root),
  // which is the same direction up to sign.
  double vx, vy;
  if (t11 <= t22) {
    vx = diff + root;
    vy = -2.0 * t12;
  } else {
    vx = -2.0 * t12;
    vy = -diff + root;
  }
  const double norm = std::hypot(vx, vy);
  if (norm < 1e-12 * std::max(1.0, trace)) {
    // Degenerate: isotropic tensor or gradient energy on one axis only.
    if (t11 <= t22) {
      e.tx = 1.0;
    } else {
      e.ty = 1.0;
    }
  } else {
    e.tx = vx / norm;
    e.ty = vy / norm;
  }
  return e;
}

EigenField eigen_decompose(const TensorField& tensor) {
  const int w = tensor.t11.width();
  const int h = tensor.t11.height();
  EigenField out{Plane(w, h), Plane(w, h), Plane(w, h), Plane(w, h)};
  for (std::size_t i = 0; i < tensor.t11.size(); ++i) {
    const Eigen2 e = eigen_decompose(tensor.t11.data()[i], tensor.t12.data()[i],
                                     tensor.t22.data()[i]);
    out.d.data()[i] = e.d;
    out.dperp.data()[i] = e.dperp;
    out.tx.data()[i] = e.tx;
    out.ty.data()[i] = e.ty;
  }
  return out;
}

PixelClassMap classify_pixels(const GradientField& grads, const EigenField& eig,
                              const StbParams& params) {
  const int w = grads.gmag_norm.width();
  const int h = grads.gmag_norm.height();
  if (eig.d.width() != w || eig.d.height() != h) {
    throw DimensionError("gradient and eigen fields differ in size");
  }
  PixelClassMap out(w, h);
  // A constant image has an all-zero magnitude map and stays all Uniform.
  if (grads.gmag_norm.max() <= 0.0 || params.threshold >= 100.0) return out;

  const double corner_floor = params.corner_abs * eig.dperp.max();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      if (grads.gmag_norm(r, c) < params.threshold) continue;
      const double d = eig.d(r, c);
      const double dperp = eig.dperp(r, c);
      const double ratio = dperp > 0.0 ? d / dperp : 0.0;
      const bool corner = d > corner_floor && ratio > params.corner_ratio;
      out(r, c) = corner ? PixelClass::kCorner : PixelClass::kEdge;
    }
  }
  return out;
}

}  // namespace stb
