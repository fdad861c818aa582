#include "stb/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "stb/error.hpp"
#include "stb/image_io.hpp"
#include "stb/interpolate.hpp"
#include "stb/parallel.hpp"

namespace stb {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

RasterImage upscale_with(Method method, const RasterImage& lr,
                         const StbParams& params) {
  switch (method) {
    case Method::kStb: return stb_upscale(lr, params);
    case Method::kBilinear: return bilinear_upscale(lr);
  }
  throw ParameterError("unknown method");
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kStb: return "stb";
    case Method::kBilinear: return "bilinear";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "stb") return Method::kStb;
  if (name == "bilinear") return Method::kBilinear;
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> methods;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t end = std::min(list.find(',', start), list.size());
    const std::string_view item = list.substr(start, end - start);
    if (item == "both") {
      methods.push_back(Method::kStb);
      methods.push_back(Method::kBilinear);
    } else if (!item.empty()) {
      methods.push_back(parse_method(item));
    }
    start = end + 1;
  }
  if (methods.empty()) throw ParameterError("no methods given");
  return methods;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  throw ParameterError("unknown report format '" + std::string(name) + "'");
}

std::vector<std::filesystem::path> collect_corpus(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw ParameterError("corpus directory not found: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm" || ext == ".png") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void cmd_upscale(const std::filesystem::path& input,
                 const std::filesystem::path& output, const StbParams& params,
                 ColorMode color_mode, unsigned threads) {
  RasterImage image = load_image(input);
  if (color_mode == ColorMode::kGray) image = to_grayscale(image);
  save_image(stb_upscale(image, params, threads), output);
}

metrics::MetricReport evaluate_images(const RasterImage& original,
                                      const RasterImage& reconstructed) {
  RasterImage ref = to_grayscale(original);
  const RasterImage rec = to_grayscale(reconstructed);
  const int dh = ref.height() - rec.height();
  const int dw = ref.width() - rec.width();
  if (dh < 0 || dh > 1 || dw < 0 || dw > 1) {
    throw MetricError("cannot compare " + std::to_string(ref.width()) + "x" +
                      std::to_string(ref.height()) + " original with " +
                      std::to_string(rec.width()) + "x" +
                      std::to_string(rec.height()) + " reconstruction");
  }
  if (dh != 0 || dw != 0) ref = crop(ref, rec.height(), rec.width());
  return metrics::evaluate(ref, rec);
}

metrics::MetricReport cmd_evaluate(const std::filesystem::path& original,
                                   const std::filesystem::path& reconstructed) {
  return evaluate_images(load_image(original), load_image(reconstructed));
}

std::uint64_t image_seed(std::uint64_t seed, std::size_t index) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index)));
}

std::vector<BenchmarkRow> cmd_benchmark(const ExperimentSpec& spec) {
  if (spec.corpus.empty()) throw ParameterError("empty corpus");
  if (spec.methods.empty()) throw ParameterError("no methods requested");
  if (!(spec.noise_variance >= 0.0)) {
    throw ParameterError("noise variance must be >= 0");
  }
  spec.params.validate();

  const std::size_t per_image = spec.methods.size();
  std::vector<BenchmarkRow> rows(spec.corpus.size() * per_image);
  for (std::size_t i = 0; i < spec.corpus.size(); ++i) {
    for (std::size_t m = 0; m < per_image; ++m) {
      rows[i * per_image + m].image = spec.corpus[i].filename().string();
      rows[i * per_image + m].method = method_name(spec.methods[m]);
    }
  }

  parallel_for(0, static_cast<int>(spec.corpus.size()), spec.threads,
               [&](int index) {
    const auto& path = spec.corpus[index];
    BenchmarkRow* image_rows = &rows[index * per_image];
    RasterImage original, lr;
    try {
      original = to_grayscale(load_image(path));
      lr = naive_downsample(original, 2);
      // Noise goes onto the downsampled image, never the original.
      lr = add_gaussian_noise(lr, spec.noise_variance,
                              image_seed(spec.seed, index));
      if (spec.dump_classes_dir) {
        const auto analysis = analyze(lr.plane(), spec.params);
        save_image(analysis.classes.to_image(),
                   *spec.dump_classes_dir /
                       (path.stem().string() + ".classes.pgm"));
      }
    } catch (const std::exception& e) {
      for (std::size_t m = 0; m < per_image; ++m) image_rows[m].error = e.what();
      return;
    }
    for (std::size_t m = 0; m < per_image; ++m) {
      BenchmarkRow& row = image_rows[m];
      try {
        const auto start = std::chrono::steady_clock::now();
        const RasterImage hr = upscale_with(spec.methods[m], lr, spec.params);
        const auto stop = std::chrono::steady_clock::now();
        row.wall_time = std::max(
            std::chrono::duration<double>(stop - start).count(), 1e-9);
        row.metrics = metrics::evaluate(
            crop(original, hr.height(), hr.width()), hr);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  });
  return rows;
}

std::string format_csv(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream out;
  out << "image,method,mse,psnr_db,epsnr_db,ssim,time_sec\n";
  for (const auto& row : rows) {
    out << csv_field(row.image) << ',' << csv_field(row.method) << ',';
    if (row.ok() && row.metrics) {
      const auto& m = *row.metrics;
      char time[32];
      std::snprintf(time, sizeof(time), "%.6f", row.wall_time);
      out << format_number(m.mse) << ',' << format_number(m.psnr_db) << ','
          << format_number(m.epsnr_db) << ',' << format_number(m.ssim) << ','
          << time;
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string format_json(const std::vector<BenchmarkRow>& rows) {
  auto number = [](double v) -> nlohmann::json {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j;
    j["image"] = row.image;
    j["method"] = row.method;
    if (row.ok() && row.metrics) {
      j["mse"] = number(row.metrics->mse);
      j["psnr_db"] = number(row.metrics->psnr_db);
      j["epsnr_db"] = number(row.metrics->epsnr_db);
      j["ssim"] = number(row.metrics->ssim);
      j["time_sec"] = row.wall_time;
    } else {
      j["error"] = row.error;
    }
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::string format_report(const std::vector<BenchmarkRow>& rows,
                          ReportFormat format) {
  return format == ReportFormat::kCsv ? format_csv(rows) : format_json(rows);
}

}  // namespace stb
