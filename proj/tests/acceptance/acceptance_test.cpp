// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stb/experiment.hpp"
#include "stb/image_io.hpp"
#include "stb/interpolate.hpp"
#include "stb/metrics.hpp"
#include "stb/parallel.hpp"
#include "stb/tensor.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace stb;

namespace {

constexpr double kConstantTol = 1e-12;
constexpr double kEigenTol = 1e-9;
constexpr double kEdgeMarginDb = 0.5;
constexpr double kLenaPsnrRef = 33.99;
constexpr double kLenaSsimRef = 0.9147;
constexpr double kLenaPsnrBand = 2.0;
constexpr double kLenaSsimBand = 0.03;
constexpr double kNoisyPsnrRef = 30.17;
constexpr double kNoisyPsnrBand = 2.0;
constexpr double kNoiseVariance = 0.001;
constexpr double kPassthroughBudget = 5.0;
constexpr double kEigenBudget = 1.0;
constexpr double kLenaBudget = 30.0;
constexpr double kUpscaleBudget = 1.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

Outcome passthrough() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> size(8, 64);
  int mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    const int w = size(rng), h = size(rng);
    const auto lr = testing::random_image(w, h, 100 + i);
    const auto hr = stb_upscale(lr, StbParams{});
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) mismatches += hr(2 * r, 2 * c) != lr(r, c);
    }
  }
  const double t = seconds_since(start);
  return {mismatches == 0 && t < kPassthroughBudget,
          fmt("mismatches=%d time=%.3fs", mismatches, t)};
}

Outcome constant_reproduction() {
  const int sizes[5][2] = {{6, 6}, {9, 7}, {16, 16}, {33, 20}, {64, 48}};
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double value = 0.1 + 0.17 * i;
    const auto hr =
        stb_upscale(RasterImage(sizes[i][0], sizes[i][1], 1, value), StbParams{});
    for (double v : hr.data()) worst = std::max(worst, std::abs(v - value));
  }
  return {worst <= kConstantTol, fmt("max_dev=%.3g", worst)};
}

Outcome eigen_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_value = 0.0, worst_residual = 0.0, worst_identity = 0.0;
  for (int i = 0; i < 1000; ++i) {
    // A = M^T M is symmetric positive semi-definite.
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    const double t11 = a * a + c * c, t12 = a * b + c * d, t22 = b * b + d * d;
    const auto e = eigen_decompose(t11, t12, t22);

    const double tr = t11 + t22, det = t11 * t22 - t12 * t12;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
    const double lo = tr / 2 - disc, hi = tr / 2 + disc;
    worst_value = std::max({worst_value, std::abs(e.d - lo), std::abs(e.dperp - hi)});

    const double rx = t11 * e.tx + t12 * e.ty - e.d * e.tx;
    const double ry = t12 * e.tx + t22 * e.ty - e.d * e.ty;
    const double px = -e.ty, py = e.tx;
    const double qx = t11 * px + t12 * py - e.dperp * px;
    const double qy = t12 * px + t22 * py - e.dperp * py;
    worst_residual = std::max(
        {worst_residual, std::hypot(rx, ry), std::hypot(qx, qy),
         std::abs(std::hypot(e.tx, e.ty) - 1.0)});

    worst_identity = std::max({worst_identity, std::abs(e.d + e.dperp - tr),
                               std::abs(e.d * e.dperp - det)});
  }
  const double t = seconds_since(start);
  const bool ok = worst_value <= kEigenTol && worst_residual <= kEigenTol &&
                  worst_identity <= kEigenTol && t < kEigenBudget;
  return {ok, fmt("value=%.2g residual=%.2g identity=%.2g time=%.3fs",
                  worst_value, worst_residual, worst_identity, t)};
}

Outcome bilinear_equivalence() {
  StbParams params;
  params.threshold = 100.0;
  int differing = 0;
  for (int i = 0; i < 20; ++i) {
    const auto lr = testing::random_image(8 + 3 * i, 10 + 2 * i, 300 + i);
    differing += !(stb_upscale(lr, params) == bilinear_upscale(lr));
  }
  return {differing == 0, fmt("differing_images=%d/20", differing)};
}

Outcome edge_advantage() {
  // Anti-aliased 45 degree edge through the image centre.
  const auto original = testing::edge_image(64, 64, 1.0, 1.0, 63.0);
  const auto lr = naive_downsample(original, 2);
  const double stb = evaluate_images(original, stb_upscale(lr, StbParams{})).psnr_db;
  const double bil = evaluate_images(original, bilinear_upscale(lr)).psnr_db;

  // Informational: the same margin over sub-pixel offsets of the edge.
  double sweep_min = 1e9, sweep_sum = 0.0;
  int n = 0;
  for (double off = 60.0; off <= 66.0; off += 0.25, ++n) {
    const auto img = testing::edge_image(64, 64, 1.0, 1.0, off);
    const auto small = naive_downsample(img, 2);
    const double m = evaluate_images(img, stb_upscale(small, StbParams{})).psnr_db -
                     evaluate_images(img, bilinear_upscale(small)).psnr_db;
    sweep_min = std::min(sweep_min, m);
    sweep_sum += m;
  }
  return {stb - bil >= kEdgeMarginDb,
          fmt("stb=%.3fdB bilinear=%.3fdB margin=%.3fdB "
              "(offset sweep min=%.3f mean=%.3f)",
              stb, bil, stb - bil, sweep_min, sweep_sum / n)};
}

RasterImage load_lena() {
  return to_grayscale(load_image(fs::path(STB_TEST_DATA_DIR) / "lena512.pgm"));
}

Outcome lena_reproduction() {
  const auto start = std::chrono::steady_clock::now();
  const auto lena = load_lena();
  const auto report =
      evaluate_images(lena, stb_upscale(naive_downsample(lena, 2), StbParams{}));
  const double t = seconds_since(start);
  const bool ok = std::abs(report.psnr_db - kLenaPsnrRef) <= kLenaPsnrBand &&
                  std::abs(report.ssim - kLenaSsimRef) <= kLenaSsimBand &&
                  t < kLenaBudget;
  return {ok, fmt("psnr=%.3fdB (ref %.2f) ssim=%.4f (ref %.4f) time=%.3fs",
                  report.psnr_db, kLenaPsnrRef, report.ssim, kLenaSsimRef, t)};
}

Outcome noise_robustness() {
  const auto lena = load_lena();
  const auto noisy = add_gaussian_noise(naive_downsample(lena, 2),
                                        kNoiseVariance, image_seed(0, 0));
  const double stb = evaluate_images(lena, stb_upscale(noisy, StbParams{})).psnr_db;
  const double bil = evaluate_images(lena, bilinear_upscale(noisy)).psnr_db;
  const bool ok =
      std::abs(stb - kNoisyPsnrRef) <= kNoisyPsnrBand && stb >= bil;
  return {ok, fmt("stb=%.3fdB (ref %.2f) bilinear=%.3fdB", stb, kNoisyPsnrRef,
                  bil)};
}

Outcome performance() {
  const auto lr = testing::textured_image(256, 256, 9);
  stb_upscale(lr, StbParams{}, 1);  // warm-up
  double best = 1e9;
  for (int i = 0; i < 3; ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto hr = stb_upscale(lr, StbParams{}, 1);
    best = std::min(best, seconds_since(start));
    if (hr.width() != 511 || hr.height() != 511) return {false, "wrong size"};
  }
  return {best < kUpscaleBudget, fmt("best_of_3=%.4fs threads=1", best)};
}

Outcome metric_self_tests() {
  std::vector<std::string> failures;
  auto check = [&](bool cond, const char* what) {
    if (!cond) failures.emplace_back(what);
  };
  const RasterImage x(2, 1, 1, std::vector<double>{0.0, 0.0});
  const RasterImage y(2, 1, 1, std::vector<double>{0.0, 0.2});
  check(std::abs(metrics::mse(x, y) - 0.02) < 1e-15, "mse example");
  check(std::abs(metrics::psnr_from_mse(0.01, 1.0) - 20.0) < 1e-12,
        "psnr example");
  const auto a = testing::textured_image(32, 32, 1);
  const auto b = testing::random_image(32, 32, 2);
  check(metrics::mse(a, a) == 0.0, "mse identical");
  check(metrics::psnr(a, a) == metrics::kInfinity, "psnr inf sentinel");
  check(std::abs(metrics::ssim(a, a) - 1.0) < 1e-12, "ssim self");
  check(metrics::mse(a, b) == metrics::mse(b, a), "mse symmetric");
  const double s = metrics::ssim(a, b);
  check(s > -1.0 && s < 1.0, "ssim bounded");
  RasterImage inv = a;
  for (double& v : inv.data()) v = 1.0 - v;
  check(metrics::ssim(a, inv) < 0.0, "ssim inverted negative");
  check(metrics::epsnr(a, a) == metrics::kInfinity, "epsnr inf sentinel");
  check(metrics::to_json(metrics::evaluate(a, a)).find("\"inf\"") !=
            std::string::npos,
        "json inf");

  std::string detail = failures.empty() ? "all checks passed" : "failed:";
  for (const auto& f : failures) detail += " [" + f + "]";
  return {failures.empty(), detail};
}

std::string metric_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "stb_acceptance_corpus";
  fs::remove_all(dir);
  fs::create_directories(dir);
  for (int i = 0; i < 5; ++i) {
    save_image(testing::textured_image(48 + 4 * i, 40 + 2 * i, 50 + i),
               dir / ("img" + std::to_string(i) + ".pgm"));
  }
  ExperimentSpec spec;
  spec.corpus = collect_corpus(dir);
  spec.noise_variance = kNoiseVariance;
  spec.seed = 42;

  std::string reference;
  int runs = 0, differing = 0;
  for (const char* value : {"1", "1", "2", "4", "8", "0"}) {
    setenv("STB_THREADS", value, 1);
    spec.threads = thread_count_from_env();
    const auto cols = metric_columns(format_csv(cmd_benchmark(spec)));
    if (runs++ == 0) {
      reference = cols;
    } else {
      differing += cols != reference;
    }
  }
  unsetenv("STB_THREADS");
  fs::remove_all(dir);
  return {differing == 0,
          fmt("runs=%d differing=%d (STB_THREADS=1,1,2,4,8,0)", runs, differing)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"passthrough of input samples", passthrough},
      {"constant reproduction", constant_reproduction},
      {"eigen decomposition oracle", eigen_oracle},
      {"bilinear equivalence at T=100", bilinear_equivalence},
      {"45-degree edge advantage", edge_advantage},
      {"Lena 512 reconstruction", lena_reproduction},
      {"noise robustness", noise_robustness},
      {"256 to 511 performance", performance},
      {"metric self-tests", metric_self_tests},
      {"benchmark determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("[%s] %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
