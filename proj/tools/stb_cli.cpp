// stb: structure-tensor image upscaling, evaluation and benchmarking.
//
//   stb upscale --input in.pgm --output out.pgm [--rgb] [param flags]
//   stb evaluate --original a.pgm --reconstructed b.pgm
//   stb benchmark --corpus DIR --out report.csv [--noise-variance F]
//                 [--seed N] [--methods stb,bilinear] [--format csv|json]
//                 [--dump-classes] [param flags]
//
// STB_THREADS caps the worker count (0 or unset = all cores).

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "stb/error.hpp"
#include "stb/experiment.hpp"
#include "stb/parallel.hpp"

namespace {

struct ParamFlags {
  stb::StbParams params;
  std::string mask = "central";
  std::string anchor = "site";

  stb::StbParams resolve() const {
    stb::StbParams p = params;
    p.gradient_mask = stb::parse_gradient_mask(mask);
    p.anchor = stb::parse_weight_anchor(anchor);
    p.validate();
    return p;
  }
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
  auto& p = flags.params;
  cmd->add_option("--sigma", p.sigma, "Structure tensor Gaussian scale")
      ->capture_default_str();
  cmd->add_option("--d", p.radius, "Neighborhood half-size")
      ->capture_default_str();
  cmd->add_option("--beta", p.beta, "Distance decay rate")
      ->capture_default_str();
  cmd->add_option("--gamma", p.gamma, "Alignment gain rate")
      ->capture_default_str();
  cmd->add_option("--threshold", p.threshold,
                  "Uniform threshold on the [0,100] gradient scale")
      ->capture_default_str();
  cmd->add_option("--corner-ratio", p.corner_ratio,
                  "Minimum d/dperp for a corner")
      ->capture_default_str();
  cmd->add_option("--corner-abs", p.corner_abs,
                  "Minimum d as a fraction of the largest dperp")
      ->capture_default_str();
  cmd->add_option("--mask", flags.mask, "Gradient mask")
      ->check(CLI::IsMember({"central", "sobel"}))
      ->capture_default_str();
  cmd->add_option("--anchor", flags.anchor, "Weight anchor")
      ->check(CLI::IsMember({"site", "nearest"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-tensor edge-directed x2 image upscaling"};
  app.require_subcommand(1);

  ParamFlags upscale_flags;
  std::string input, output;
  bool rgb = false;
  auto* upscale = app.add_subcommand("upscale", "Upscale an image by 2");
  upscale->add_option("--input", input, "Input PGM/PNG")->required();
  upscale->add_option("--output", output, "Output .pgm or .png")->required();
  upscale->add_flag("--rgb", rgb,
                    "Keep color; weights come from luma and are shared");
  add_param_flags(upscale, upscale_flags);

  std::string original, reconstructed;
  auto* evaluate = app.add_subcommand("evaluate", "Compare two images");
  evaluate->add_option("--original", original)->required();
  evaluate->add_option("--reconstructed", reconstructed)->required();

  ParamFlags bench_flags;
  std::string corpus, out, methods = "stb,bilinear", format = "csv";
  double noise_variance = 0.0;
  std::uint64_t seed = 0;
  bool dump_classes = false;
  auto* benchmark = app.add_subcommand(
      "benchmark", "Downsample, reconstruct and measure a corpus");
  benchmark->add_option("--corpus", corpus, "Directory of PGM/PNG images")
      ->required();
  benchmark->add_option("--out", out, "Report path")->required();
  benchmark->add_option("--noise-variance", noise_variance,
                        "Gaussian noise variance on the [0,1] scale")
      ->capture_default_str();
  benchmark->add_option("--seed", seed)->capture_default_str();
  benchmark->add_option("--methods", methods, "Comma separated: stb,bilinear")
      ->capture_default_str();
  benchmark->add_option("--format", format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  benchmark->add_flag("--dump-classes", dump_classes,
                      "Write LR classification maps next to the report");
  add_param_flags(benchmark, bench_flags);

  CLI11_PARSE(app, argc, argv);

  const unsigned threads = stb::thread_count_from_env();
  try {
    if (*upscale) {
      stb::cmd_upscale(input, output, upscale_flags.resolve(),
                       rgb ? stb::ColorMode::kRgb : stb::ColorMode::kGray,
                       threads);
      return 0;
    }
    if (*evaluate) {
      std::cout << stb::metrics::to_json(
                       stb::cmd_evaluate(original, reconstructed))
                << "\n";
      return 0;
    }
    if (*benchmark) {
      stb::ExperimentSpec spec;
      spec.corpus = stb::collect_corpus(corpus);
      if (spec.corpus.empty()) {
        std::cerr << "no .pgm or .png images in " << corpus << "\n";
        return 2;
      }
      spec.params = bench_flags.resolve();
      spec.noise_variance = noise_variance;
      spec.seed = seed;
      spec.methods = stb::parse_methods(methods);
      spec.report_format = stb::parse_report_format(format);
      spec.threads = threads;
      const std::filesystem::path out_path(out);
      if (dump_classes) {
        spec.dump_classes_dir = out_path.has_parent_path()
                                    ? out_path.parent_path()
                                    : std::filesystem::path(".");
      }
      const auto rows = stb::cmd_benchmark(spec);
      std::ofstream report(out_path, std::ios::binary);
      if (!report) {
        std::cerr << "cannot write " << out << "\n";
        return 2;
      }
      report << stb::format_report(rows, spec.report_format);
      int failed = 0;
      for (const auto& row : rows) {
        if (!row.ok()) {
          std::cerr << row.image << " [" << row.method << "]: " << row.error
                    << "\n";
          ++failed;
        }
      }
      return failed == 0 ? 0 : 1;
    }
  } catch (const stb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
