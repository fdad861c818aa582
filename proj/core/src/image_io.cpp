#include "stb/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "stb/error.hpp"

namespace stb {
namespace {

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext;
}

std::vector<unsigned char> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DecodeError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Minimal cursor over a PGM header: whitespace separated tokens with '#'
// comments running to end of line.
class PgmReader {
 public:
  PgmReader(const std::vector<unsigned char>& bytes, std::string name)
      : bytes_(bytes), name_(std::move(name)) {}

  std::string token() {
    skip_space_and_comments();
    std::string out;
    while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_]) &&
           bytes_[pos_] != '#') {
      out.push_back(static_cast<char>(bytes_[pos_++]));
    }
    if (out.empty()) fail("unexpected end of header");
    return out;
  }

  int integer() {
    const std::string t = token();
    int value = 0;
    for (char c : t) {
      if (c < '0' || c > '9') fail("expected integer, got '" + t + "'");
      value = value * 10 + (c - '0');
      if (value > 1 << 24) fail("integer too large");
    }
    return value;
  }

  // After maxval exactly one whitespace byte precedes binary data.
  void single_space() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
      fail("missing separator before raster");
    }
    ++pos_;
  }

  std::size_t position() const { return pos_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw DecodeError("PGM decode error in " + name_ + ": " + what);
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  std::string name_;
  std::size_t pos_ = 0;
};

RasterImage decode_pgm(const std::vector<unsigned char>& bytes,
                       const std::string& name) {
  PgmReader reader(bytes, name);
  const std::string magic = reader.token();
  if (magic != "P2" && magic != "P5") reader.fail("unsupported magic " + magic);
  const int width = reader.integer();
  const int height = reader.integer();
  const int maxval = reader.integer();
  if (width < 1 || height < 1) reader.fail("empty image");
  if (maxval != 255) {
    reader.fail("unsupported maxval " + std::to_string(maxval) +
                " (only 8-bit, maxval 255)");
  }
  const std::size_t count = static_cast<std::size_t>(width) * height;
  std::vector<double> data(count);
  if (magic == "P5") {
    reader.single_space();
    const std::size_t start = reader.position();
    if (bytes.size() < start + count) reader.fail("truncated raster");
    for (std::size_t i = 0; i < count; ++i) data[i] = bytes[start + i] / 255.0;
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = reader.integer();
      if (v > 255) reader.fail("sample exceeds maxval");
      data[i] = v / 255.0;
    }
  }
  return RasterImage(width, height, 1, std::move(data));
}

RasterImage decode_png(const std::vector<unsigned char>& bytes,
                       const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  auto fail = [&](const std::string& what) -> RasterImage {
    png_image_free(&image);
    throw DecodeError("PNG decode error in " + name + ": " + what);
  };
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    return fail(image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    return fail("unsupported bit depth 16 (only 8-bit)");
  }
  const bool color = image.format & PNG_FORMAT_FLAG_COLOR;
  const int channels = color ? 3 : 1;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    return fail(image.message);
  }
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  png_image_free(&image);
  std::vector<double> data(buffer.size());
  std::transform(buffer.begin(), buffer.end(), data.begin(),
                 [](png_byte b) { return b / 255.0; });
  return RasterImage(width, height, channels, std::move(data));
}

std::vector<unsigned char> quantized(const RasterImage& image) {
  std::vector<unsigned char> out(image.data().size());
  std::transform(image.data().begin(), image.data().end(), out.begin(),
                 quantize);
  return out;
}

void write_pgm(const RasterImage& image, const std::filesystem::path& path) {
  if (image.channels() != 1) {
    throw WriteError("PGM output requires a 1-channel image: " + path.string());
  }
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  const auto raster = quantized(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WriteError("cannot open " + path.string() + " for writing");
  out.write(header.data(), static_cast<std::streamsize>(header.size()));
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) throw WriteError("failed writing " + path.string());
}

void write_png(const RasterImage& image, const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width());
  png.height = static_cast<png_uint_32>(image.height());
  png.format = image.channels() == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  const auto raster = quantized(image);
  const std::string file = path.string();
  if (!png_image_write_to_file(&png, file.c_str(), 0, raster.data(), 0,
                               nullptr)) {
    const std::string message = png.message;
    png_image_free(&png);
    throw WriteError("PNG write error for " + file + ": " + message);
  }
}

}  // namespace

unsigned char quantize(double value) {
  if (!(value > 0.0)) return 0;
  if (value >= 1.0) return 255;
  return static_cast<unsigned char>(std::floor(value * 255.0 + 0.5));
}

RasterImage load_image(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  const std::string name = path.string();
  const std::string ext = lower_extension(path);
  if (ext == ".png") return decode_png(bytes, name);
  if (ext == ".pgm") return decode_pgm(bytes, name);
  // Fall back to sniffing the magic bytes.
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    return decode_png(bytes, name);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' &&
      (bytes[1] == '2' || bytes[1] == '5')) {
    return decode_pgm(bytes, name);
  }
  throw DecodeError("unsupported image format: " + name);
}

void save_image(const RasterImage& image, const std::filesystem::path& path) {
  if (image.empty()) throw WriteError("refusing to write an empty image");
  const std::string ext = lower_extension(path);
  if (ext == ".pgm") {
    write_pgm(image, path);
  } else if (ext == ".png") {
    write_png(image, path);
  } else {
    throw WriteError("unsupported output extension '" + ext + "' for " +
                     path.string());
  }
}

}  // namespace stb
