#include "stb/metrics.hpp"

#include <cmath>
#include <string>

#include "json.hpp"

#include "stb/error.hpp"

namespace stb::metrics {
namespace {

constexpr int kSsimRadius = 5;  // 11x11 window
constexpr double kSsimSigma = 1.5;
constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;

void require_same_shape(const RasterImage& x, const RasterImage& y) {
  if (x.width() != y.width() || x.height() != y.height() ||
      x.channels() != y.channels()) {
    throw MetricError("image shapes differ: " + std::to_string(x.width()) +
                      "x" + std::to_string(x.height()) + "x" +
                      std::to_string(x.channels()) + " vs " +
                      std::to_string(y.width()) + "x" +
                      std::to_string(y.height()) + "x" +
                      std::to_string(y.channels()));
  }
}

void require_gray(const RasterImage& x) {
  if (x.channels() != 1) throw MetricError("metric needs a 1-channel image");
}

double mean_squared(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

// Separable Gaussian filter keeping only positions where the whole window
// fits.
Plane filter_valid(const Plane& in, const std::vector<double>& taps) {
  const int r = kSsimRadius;
  const int w = in.width() - 2 * r;
  const int h = in.height() - 2 * r;
  Plane rows(w, in.height());
  for (int i = 0; i < in.height(); ++i) {
    for (int j = 0; j < w; ++j) {
      double acc = 0.0;
      for (int k = 0; k <= 2 * r; ++k) acc += taps[k] * in(i, j + k);
      rows(i, j) = acc;
    }
  }
  Plane out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double acc = 0.0;
      for (int k = 0; k <= 2 * r; ++k) acc += taps[k] * rows(i + k, j);
      out(i, j) = acc;
    }
  }
  return out;
}

std::vector<double> ssim_taps() {
  std::vector<double> taps(2 * kSsimRadius + 1);
  double sum = 0.0;
  for (int x = -kSsimRadius; x <= kSsimRadius; ++x) {
    taps[x + kSsimRadius] = std::exp(-(x * x) / (2.0 * kSsimSigma * kSsimSigma));
    sum += taps[x + kSsimRadius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

}  // namespace

double mse(const RasterImage& x, const RasterImage& y) {
  require_same_shape(x, y);
  return mean_squared(x.data(), y.data());
}

double mse(const Plane& x, const Plane& y) {
  if (x.width() != y.width() || x.height() != y.height()) {
    throw MetricError("plane shapes differ");
  }
  if (x.empty()) throw MetricError("empty plane");
  return mean_squared(x.data(), y.data());
}

double psnr_from_mse(double mse, double peak) {
  if (mse == 0.0) return kInfinity;
  return 10.0 * std::log10(peak * peak / mse);
}

double psnr(const RasterImage& x, const RasterImage& y, double peak) {
  return psnr_from_mse(mse(x, y), peak);
}

Plane sobel_magnitude(const Plane& image) {
  if (image.width() < 3 || image.height() < 3) {
    throw DimensionError("Sobel needs at least 3x3 pixels");
  }
  Plane out(image.width(), image.height());
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      auto at = [&](int dr, int dc) { return image.clamped(r + dr, c + dc); };
      const double gx = (at(-1, 1) + 2.0 * at(0, 1) + at(1, 1)) -
                        (at(-1, -1) + 2.0 * at(0, -1) + at(1, -1));
      const double gy = (at(1, -1) + 2.0 * at(1, 0) + at(1, 1)) -
                        (at(-1, -1) + 2.0 * at(-1, 0) + at(-1, 1));
      out(r, c) = std::sqrt(gx * gx + gy * gy);
    }
  }
  return out;
}

double epsnr(const RasterImage& original, const RasterImage& reconstructed) {
  require_same_shape(original, reconstructed);
  require_gray(original);
  const Plane edges = sobel_magnitude(original.plane());
  double peak = edges.max();
  // No edges in the original: fall back to the largest possible response.
  if (peak <= 0.0) peak = 4.0 * std::sqrt(2.0);
  return psnr_from_mse(mse(edges, sobel_magnitude(reconstructed.plane())),
                       peak);
}

double epsnr(const RasterImage& original, const RasterImage& reconstructed,
             double peak) {
  require_same_shape(original, reconstructed);
  require_gray(original);
  return psnr_from_mse(mse(sobel_magnitude(original.plane()),
                           sobel_magnitude(reconstructed.plane())),
                       peak);
}

double ssim(const RasterImage& x, const RasterImage& y) {
  require_same_shape(x, y);
  require_gray(x);
  const int side = 2 * kSsimRadius + 1;
  if (x.width() < side || x.height() < side) {
    throw DimensionError("SSIM needs at least 11x11 pixels");
  }
  const Plane px = x.plane();
  const Plane py = y.plane();
  Plane xx(px.width(), px.height()), yy(px.width(), px.height()),
      xy(px.width(), px.height());
  for (std::size_t i = 0; i < px.size(); ++i) {
    xx.data()[i] = px.data()[i] * px.data()[i];
    yy.data()[i] = py.data()[i] * py.data()[i];
    xy.data()[i] = px.data()[i] * py.data()[i];
  }
  const auto taps = ssim_taps();
  const Plane mu_x = filter_valid(px, taps);
  const Plane mu_y = filter_valid(py, taps);
  const Plane e_xx = filter_valid(xx, taps);
  const Plane e_yy = filter_valid(yy, taps);
  const Plane e_xy = filter_valid(xy, taps);

  double total = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x.data()[i];
    const double my = mu_y.data()[i];
    const double var_x = e_xx.data()[i] - mx * mx;
    const double var_y = e_yy.data()[i] - my * my;
    const double cov = e_xy.data()[i] - mx * my;
    total += ((2.0 * mx * my + kSsimC1) * (2.0 * cov + kSsimC2)) /
             ((mx * mx + my * my + kSsimC1) * (var_x + var_y + kSsimC2));
  }
  return total / static_cast<double>(mu_x.size());
}

MetricReport evaluate(const RasterImage& original,
                      const RasterImage& reconstructed) {
  MetricReport report;
  report.mse = mse(original, reconstructed);
  report.psnr_db = psnr_from_mse(report.mse, 1.0);
  report.epsnr_db = epsnr(original, reconstructed);
  report.ssim = ssim(original, reconstructed);
  report.pixel_count = original.pixel_count();
  return report;
}

std::string to_json(const MetricReport& report) {
  auto number = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  nlohmann::json j = nlohmann::json::object();
  j["mse"] = number(report.mse);
  j["psnr_db"] = number(report.psnr_db);
  j["epsnr_db"] = number(report.epsnr_db);
  j["ssim"] = number(report.ssim);
  return j.dump();
}

}  // namespace stb::metrics
