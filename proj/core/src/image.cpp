#include "stb/image.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "stb/error.hpp"

namespace stb {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw DimensionError("image dimensions must be positive, got " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
}

void check_range(std::span<const double> values) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ParameterError("intensity outside [0,1]: " + std::to_string(v));
    }
  }
}

}  // namespace

Plane::Plane(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

Plane::Plane(int width, int height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionError("plane data length does not match dimensions");
  }
}

double Plane::clamped(int row, int col) const {
  row = std::clamp(row, 0, height_ - 1);
  col = std::clamp(col, 0, width_ - 1);
  return (*this)(row, col);
}

double Plane::min() const { return *std::min_element(data_.begin(), data_.end()); }
double Plane::max() const { return *std::max_element(data_.begin(), data_.end()); }

RasterImage::RasterImage(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height);
  if (channels != 1 && channels != 3) {
    throw ParameterError("channels must be 1 or 3, got " +
                         std::to_string(channels));
  }
  if (!(fill >= 0.0 && fill <= 1.0)) {
    throw ParameterError("fill intensity outside [0,1]");
  }
  data_.assign(pixel_count() * channels, fill);
}

RasterImage::RasterImage(int width, int height, int channels,
                         std::vector<double> data)
    : RasterImage(width, height, channels) {
  if (data.size() != data_.size()) {
    throw DimensionError("image data length " + std::to_string(data.size()) +
                         " does not match " + std::to_string(width) + "x" +
                         std::to_string(height) + "x" +
                         std::to_string(channels));
  }
  check_range(data);
  data_ = std::move(data);
}

RasterImage RasterImage::from_plane(const Plane& plane) {
  return RasterImage(plane.width(), plane.height(), 1,
                     std::vector<double>(plane.data().begin(),
                                         plane.data().end()));
}

Plane RasterImage::plane(int channel) const {
  if (channel < 0 || channel >= channels_) {
    throw ParameterError("channel index out of range");
  }
  Plane out(width_, height_);
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) out(r, c) = (*this)(r, c, channel);
  }
  return out;
}

RasterImage to_grayscale(const RasterImage& image) {
  if (image.channels() == 1) return image;
  RasterImage out(image.width(), image.height(), 1);
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      const double y = 0.299 * image(r, c, 0) + 0.587 * image(r, c, 1) +
                       0.114 * image(r, c, 2);
      // The weights sum to 1 only up to rounding.
      out(r, c) = std::clamp(y, 0.0, 1.0);
    }
  }
  return out;
}

RasterImage naive_downsample(const RasterImage& image, int factor) {
  if (factor < 2) throw ParameterError("downsample factor must be >= 2");
  if (image.width() < factor || image.height() < factor) {
    throw DimensionError("image smaller than the downsample factor");
  }
  const int out_w = (image.width() + factor - 1) / factor;
  const int out_h = (image.height() + factor - 1) / factor;
  RasterImage out(out_w, out_h, image.channels());
  for (int r = 0; r < out_h; ++r) {
    for (int c = 0; c < out_w; ++c) {
      for (int ch = 0; ch < image.channels(); ++ch) {
        out(r, c, ch) = image(r * factor, c * factor, ch);
      }
    }
  }
  return out;
}

RasterImage add_gaussian_noise(const RasterImage& image, double variance,
                               std::uint64_t seed) {
  if (!(variance >= 0.0)) throw ParameterError("noise variance must be >= 0");
  RasterImage out = image;
  if (variance == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, std::sqrt(variance));
  for (double& v : out.data()) v = std::clamp(v + noise(rng), 0.0, 1.0);
  return out;
}

RasterImage crop(const RasterImage& image, int rows, int cols) {
  if (rows < 1 || cols < 1 || rows > image.height() || cols > image.width()) {
    throw DimensionError("crop " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " does not fit in " +
                         std::to_string(image.height()) + "x" +
                         std::to_string(image.width()));
  }
  RasterImage out(cols, rows, image.channels());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      for (int ch = 0; ch < image.channels(); ++ch) {
        out(r, c, ch) = image(r, c, ch);
      }
    }
  }
  return out;
}

}  // namespace stb
