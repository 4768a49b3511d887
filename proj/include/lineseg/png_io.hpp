#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace lineseg {

// Decoded 8-bit raster: channels is 1 (gray) or 3 (RGB).
struct PngImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> data;  // row-major, channels interleaved
};

// Minimal deterministic PNG codec over zlib. The encoder always emits
// 8-bit non-interlaced images with filter 0, so identical input produces
// identical bytes. The decoder accepts 8-bit gray, RGB, palette,
// gray+alpha and RGBA (alpha dropped), all scanline filters.
std::vector<std::uint8_t> encode_png(const PngImage& img);
PngImage decode_png(const std::uint8_t* bytes, std::size_t size);
PngImage decode_png(const std::vector<std::uint8_t>& bytes);

// Reads just the IHDR dimensions; throws DataError on malformed data.
void png_dimensions(const std::vector<std::uint8_t>& bytes, int& width, int& height);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

}  // namespace lineseg
