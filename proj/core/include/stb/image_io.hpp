#pragma once

#include <filesystem>

#include "stb/image.hpp"

namespace stb {

// Reads PGM (P2/P5, maxval 255) or 8-bit PNG (gray, gray+alpha, RGB, RGBA).
// Alpha is dropped. Intensities are code / 255.
RasterImage load_image(const std::filesystem::path& path);

// Writes by extension: .pgm (P5, requires 1 channel) or .png. Values are
// quantized as round(v * 255) with halves rounded up and clamped to [0,255].
void save_image(const RasterImage& image, const std::filesystem::path& path);

// The byte value save_image stores for an intensity.
unsigned char quantize(double value);

}  // namespace stb
