#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lineseg/metrics.hpp"
#include "lineseg/png_io.hpp"
#include "lineseg/raster.hpp"

namespace lineseg {

// Deterministic label -> 24-bit color mapping: a golden-ratio hue walk at
// full saturation/value, with a collision-resolving candidate sequence so
// the mapping stays injective after 8-bit quantization. Never black.
std::array<std::uint8_t, 3> instance_color(std::int32_t label);

// Instance maps as 24-bit RGB PNGs, background black.
std::vector<std::uint8_t> encode_instance_png(const InstanceMap& m);

// Distinct non-black colors become labels in first-encounter scan order,
// so any externally colored ground-truth mask loads.
InstanceMap decode_instance_png(const std::vector<std::uint8_t>& bytes);

// Non-black = ink.
BinaryMask decode_semantic_png(const std::vector<std::uint8_t>& bytes);

// Page images: grayscale PNG round-trip (RGB input converts to luminance).
std::vector<std::uint8_t> encode_gray_png(const GrayImage& img);
GrayImage decode_gray_png(const std::vector<std::uint8_t>& bytes);

// Dataset directory layout: root/<manuscript>/<split>/{img,gt}/<page>.png.
struct PagePair {
  std::string stem;
  std::filesystem::path image;
  std::filesystem::path gt;  // empty when the split is unannotated
  bool has_gt = false;
};

struct SplitEntry {
  std::string name;
  std::vector<PagePair> pages;  // sorted by stem
};

struct ManuscriptEntry {
  std::string name;
  std::vector<SplitEntry> splits;  // sorted by name
};

struct DatasetLayout {
  std::filesystem::path root;
  std::vector<ManuscriptEntry> manuscripts;  // sorted by name

  const SplitEntry* find(const std::string& manuscript, const std::string& split) const;
};

// Discovers manuscripts, splits and page pairs. A split with a gt/
// directory is annotated: every image must have a same-stem gt file and
// every gt file a matching image (DataError otherwise). Image/gt dimension
// mismatches are also rejected. Listing order never matters.
DatasetLayout scan_dataset(const std::filesystem::path& root);

// Report serialization; byte-stable, floats with 6 decimal places.
// CSV columns: system, manuscript, page, piu, liu, dr, ra, fm. Per-page
// rows are followed by one "(average)" row per manuscript and one
// "(overall)" row per system.
std::string report_to_json(const Leaderboard& lb);
std::string report_to_csv(const Leaderboard& lb);
std::string report_to_json(const SystemReport& report);
std::string report_to_csv(const SystemReport& report);

}  // namespace lineseg
