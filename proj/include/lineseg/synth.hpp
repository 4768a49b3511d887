#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lineseg/raster.hpp"

namespace lineseg {

enum class Degradation { None, Faded, Stains };

// Everything that determines a synthetic page. The seed fully determines
// the output; geometry uses integer arithmetic only, so pages are
// bit-identical across hosts.
struct PageSpec {
  int width = 480;
  int height = 640;
  int columns = 1;
  int lines_per_column = 8;
  int char_height = 16;
  int line_spacing = 20;
  int baseline_curvature = 0;  // max quadratic bow, px
  int ink_level = 60;
  int bg_level = 220;
  double noise_std = 0.0;
  Degradation degradation = Degradation::None;
  double fade_alpha = 0.0;  // Faded: ink moves this fraction toward bg
  int stain_count = 0;      // Stains: number of blotches
  std::uint64_t seed = 0;
};

struct SynthPage {
  GrayImage image;
  InstanceMap gt;  // normalized labels, one per text line
  PageSpec spec;
};

// Renders columns of word-like ink blobs along (possibly curved) baselines.
// Noise and degradation touch only the image, never the ground truth.
// Throws std::invalid_argument when the geometry cannot fit the page.
SynthPage generate_page(const PageSpec& spec);

struct SplitCounts {
  int train = 3;
  int validation = 10;
  int test = 15;
};

struct ManuscriptSpec {
  std::string name;
  PageSpec base;
};

// The three default synthetic families: single-column clean, two-column
// dense, curved-baseline degraded.
std::vector<ManuscriptSpec> default_manuscripts(std::uint64_t seed);

// Writes root/<manuscript>/<split>/{img,gt}/page_###.png for every family
// and split; page seeds derive from (family seed, split, index).
void generate_dataset(const std::filesystem::path& root,
                      const std::vector<ManuscriptSpec>& manuscripts,
                      const SplitCounts& counts);

}  // namespace lineseg
