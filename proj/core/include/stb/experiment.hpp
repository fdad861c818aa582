#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stb/image.hpp"
#include "stb/metrics.hpp"
#include "stb/params.hpp"

namespace stb {

enum class Method { kStb, kBilinear };
enum class ColorMode { kGray, kRgb };
enum class ReportFormat { kCsv, kJson };

std::string_view method_name(Method method);
Method parse_method(std::string_view name);
// Comma separated, e.g. "stb,bilinear". "both" is accepted as shorthand.
std::vector<Method> parse_methods(std::string_view list);
ReportFormat parse_report_format(std::string_view name);

struct ExperimentSpec {
  std::vector<std::filesystem::path> corpus;
  StbParams params;
  double noise_variance = 0.0;
  std::uint64_t seed = 0;
  std::vector<Method> methods{Method::kStb, Method::kBilinear};
  ReportFormat report_format = ReportFormat::kCsv;
  // Concurrent images; 0 = hardware concurrency.
  unsigned threads = 1;
  // When set, the LR classification map of each image is written here.
  std::optional<std::filesystem::path> dump_classes_dir;
};

struct BenchmarkRow {
  std::string image;
  std::string method;
  std::optional<metrics::MetricReport> metrics;
  double wall_time = 0.0;  // seconds
  std::string error;       // non-empty iff the row failed

  bool ok() const { return error.empty(); }
};

// All .pgm and .png files directly inside dir, sorted by file name.
std::vector<std::filesystem::path> collect_corpus(
    const std::filesystem::path& dir);

// Loads, upscales and saves. Gray mode converts to luma first; rgb mode
// keeps the channels and shares the luma-derived weights between them.
void cmd_upscale(const std::filesystem::path& input,
                 const std::filesystem::path& output, const StbParams& params,
                 ColorMode color_mode, unsigned threads = 1);

// Metrics on luma. The original is cropped top-left when it is larger than
// the reconstruction by at most one row and one column.
metrics::MetricReport cmd_evaluate(const std::filesystem::path& original,
                                   const std::filesystem::path& reconstructed);
metrics::MetricReport evaluate_images(const RasterImage& original,
                                      const RasterImage& reconstructed);

// Per image: luma, x2 naive downsample, optional noise on the downsampled
// image, upscale with each method, measure against the cropped original.
// Rows come back in corpus order, then method order. Failures produce rows
// with an error and never abort the run.
std::vector<BenchmarkRow> cmd_benchmark(const ExperimentSpec& spec);

// The noise seed used for the image at `index` in the corpus.
std::uint64_t image_seed(std::uint64_t seed, std::size_t index);

std::string format_csv(const std::vector<BenchmarkRow>& rows);
std::string format_json(const std::vector<BenchmarkRow>& rows);
std::string format_report(const std::vector<BenchmarkRow>& rows,
                          ReportFormat format);

}  // namespace stb
