#pragma once

#include <filesystem>

#include "layergauge/tensor.hpp"

// Single decode seam for 8-bit raster images. Dispatches on magic bytes:
// PNG and JPEG via the system codecs, PPM/PGM natively. Decoded values are
// scaled to [0, 1]; grayscale sources are replicated to 3 channels.

namespace layergauge {

Tensorf decodeImageFile(const std::filesystem::path& path);
Tensorf decodeImageBytes(const std::string& bytes, const std::string& sourceName);

// 8-bit encoders, mainly for dataset tooling and tests. Values are clamped to
// [0, 1] and quantized to 255 levels.
void writePpm(const Tensorf& pixels, const std::filesystem::path& path);
void writePng(const Tensorf& pixels, const std::filesystem::path& path);
void writeJpeg(const Tensorf& pixels, const std::filesystem::path& path, int quality = 90);

}  // namespace layergauge
