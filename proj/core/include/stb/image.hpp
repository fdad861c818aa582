#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace stb {

// A dense row-major grid of unconstrained reals. Used for gradients, tensor
// components, eigenvalues and any other per-pixel scalar field.
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, double fill = 0.0);
  Plane(int width, int height, std::vector<double> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int row, int col) {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  double operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }

  // Replicate-boundary access: coordinates are clamped into the grid.
  double clamped(int row, int col) const;

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  double min() const;
  double max() const;

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// An image with 1 or 3 interleaved channels and intensities in [0,1].
//
// The constructors validate the range invariant. Mutable element access does
// not; writers clamp on output and the library's own operations keep values in
// range.
class RasterImage {
 public:
  RasterImage() = default;
  RasterImage(int width, int height, int channels = 1, double fill = 0.0);
  RasterImage(int width, int height, int channels, std::vector<double> data);

  // Wraps a single-channel plane. Throws ParameterError if any value lies
  // outside [0,1].
  static RasterImage from_plane(const Plane& plane);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width_) * height_;
  }
  bool empty() const { return data_.empty(); }

  double& operator()(int row, int col, int channel = 0) {
    return data_[index(row, col, channel)];
  }
  double operator()(int row, int col, int channel = 0) const {
    return data_[index(row, col, channel)];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  // Copies one channel out as a plane.
  Plane plane(int channel = 0) const;

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  std::size_t index(int row, int col, int channel) const {
    return (static_cast<std::size_t>(row) * width_ + col) * channels_ + channel;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// Luma (0.299 R + 0.587 G + 0.114 B) for 3-channel input; 1-channel input is
// returned unchanged.
RasterImage to_grayscale(const RasterImage& image);

// Keeps rows and columns 0, factor, 2*factor, ... (no prefilter). Output
// dimensions are ceil(dim / factor).
RasterImage naive_downsample(const RasterImage& image, int factor);

// Adds independent N(0, variance) samples to every intensity and clamps to
// [0,1]. The same seed always produces the same output.
RasterImage add_gaussian_noise(const RasterImage& image, double variance,
                               std::uint64_t seed);

// Top-left rows x cols sub-image.
RasterImage crop(const RasterImage& image, int rows, int cols);

}  // namespace stb
