#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lineseg {

struct Point {
  int x = 0;
  int y = 0;
  bool operator==(const Point&) const = default;
};

// Single-channel intensity raster. Values live in [0, 255] but are stored
// real-valued so filter chains do not quantize; quantization to 8 bits
// happens only at I/O boundaries.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> data;  // row-major

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  double& at(int x, int y) { return data[idx(x, y)]; }
  double at(int x, int y) const { return data[idx(x, y)]; }
};

// 8-bit RGB raster, 3 bytes per pixel, row-major.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int w, int h) : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

  std::uint8_t* px(int x, int y) { return data.data() + (static_cast<std::size_t>(y) * width + x) * 3; }
  const std::uint8_t* px(int x, int y) const {
    return data.data() + (static_cast<std::size_t>(y) * width + x) * 3;
  }
};

// Per-pixel ink mask; true = ink/foreground (dark text after binarization).
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // 0/1

  BinaryMask() = default;
  BinaryMask(int w, int h, bool fill = false)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {}

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  bool at(int x, int y) const { return data[idx(x, y)] != 0; }
  void set(int x, int y, bool v) { data[idx(x, y)] = v ? 1 : 0; }
  std::int64_t count() const;
  bool empty_ink() const { return count() == 0; }
};

// Per-pixel line-instance labels; 0 = background, k >= 1 = instance k.
struct InstanceMap {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> labels;  // row-major

  InstanceMap() = default;
  InstanceMap(int w, int h) : width(w), height(h), labels(static_cast<std::size_t>(w) * h, 0) {}

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  std::int32_t at(int x, int y) const { return labels[idx(x, y)]; }
  void set(int x, int y, std::int32_t v) { labels[idx(x, y)] = v; }
  std::int32_t max_label() const;
};

// Signed integer raster (distance maps and similar intermediates whose
// values exceed the 8-bit intensity range).
struct IntRaster {
  int width = 0;
  int height = 0;
  std::vector<std::int32_t> data;

  IntRaster() = default;
  IntRaster(int w, int h, std::int32_t fill = 0)
      : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

  std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
  std::int32_t at(int x, int y) const { return data[idx(x, y)]; }
  void set(int x, int y, std::int32_t v) { data[idx(x, y)] = v; }
};

// One connected region with its pixel set.
struct Component {
  std::int32_t label = 0;
  std::int64_t area = 0;
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  std::vector<Point> pixels;

  int bbox_width() const { return max_x - min_x + 1; }
  int bbox_height() const { return max_y - min_y + 1; }
};

// Component geometry without the pixel list (cheap bulk labeling).
struct ComponentInfo {
  std::int32_t label = 0;
  std::int64_t area = 0;
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;

  int bbox_width() const { return max_x - min_x + 1; }
  int bbox_height() const { return max_y - min_y + 1; }
};

// Flat structuring element. Factories produce odd-sized symmetric shapes
// centered on the origin; arbitrary offset sets are accepted as long as
// they contain the origin. Offsets are kept as per-row contiguous runs so
// morphology can run as 1-D sliding windows per row.
struct StructuringElement {
  struct Run {
    int dy = 0;
    int dx_min = 0;
    int dx_max = 0;
  };

  std::vector<Point> offsets;  // sorted (dy, dx), includes (0,0)
  std::vector<Run> runs;       // maximal horizontal runs, sorted

  static StructuringElement rectangle(int w, int h);
  static StructuringElement ellipse(int w, int h);
  static StructuringElement circle(int r);
  static StructuringElement from_offsets(std::vector<Point> offsets);
};

// Connected components of the ink pixels. Labels are assigned 1..K in
// first-encounter (row-major scan) order. connectivity must be 4 or 8.
std::vector<Component> connected_components(const BinaryMask& mask, int connectivity = 8);

// Same labeling, but produces the label raster (and optional geometry)
// without materializing per-component pixel lists.
InstanceMap label_components(const BinaryMask& mask, int connectivity = 8,
                             std::vector<ComponentInfo>* info = nullptr);

// Binary morphology. Out-of-bounds pixels are background.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);
BinaryMask close(const BinaryMask& mask, const StructuringElement& se);

// Grayscale morphology (min/max over the element). Out-of-bounds samples
// are the identity of the respective extremum, i.e. the window clips.
GrayImage gray_dilate(const GrayImage& img, const StructuringElement& se);
GrayImage gray_erode(const GrayImage& img, const StructuringElement& se);
GrayImage gray_open(const GrayImage& img, const StructuringElement& se);

// White top-hat: img - opening(img), clamped to >= 0.
GrayImage top_hat(const GrayImage& img, const StructuringElement& se);

// Luminance conversion, 0.299 R + 0.587 G + 0.114 B rounded half-up.
GrayImage to_grayscale(const RgbImage& rgb);

// Remap labels to 1..K preserving first-encounter scan order.
InstanceMap normalize_labels(const InstanceMap& m);

// Any label > 0 becomes ink.
BinaryMask to_binary(const InstanceMap& m);

// Pointwise helpers shared by the pipelines.
GrayImage invert(const GrayImage& img);                         // 255 - v
GrayImage mask_to_gray(const BinaryMask& m, double ink_value);  // ink -> value, else 0

}  // namespace lineseg
