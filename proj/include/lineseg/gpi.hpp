#pragma once

#include <cstdint>
#include <vector>

#include "lineseg/filters.hpp"
#include "lineseg/raster.hpp"

namespace lineseg {

// Vertical band [x_start, x_end) holding one text column.
struct ColumnBand {
  int x_start = 0;
  int x_end = 0;
};

// y = a x^2 + b x + c fitted to a blob's column midpoints.
struct BlobCurve {
  double a = 0.0, b = 0.0, c = 0.0;
  int x_start = 0, x_end = 0;  // inclusive fitted extent
  int band = -1;               // owning column band index, -1 = unassigned
  std::int32_t source_label = 0;
};

struct GpiConfig {
  double tv_weight = 0.1;
  int tv_max_iter = 200;
  double tv_tol = 1e-4;
  int tophat_radius = 15;
  int blur_kw = 31;
  int blur_kh = 5;
  double valley_threshold = 0.1;  // fraction of the profile maximum
  int ellipse_w = 0;              // 0 = derive from the median blob height
  int ellipse_h = 0;
  int extrapolation_margin = 0;  // 0 = 2 * blur_kw
  double area_threshold_factor = 1.2;
  double area_percentile = 0.95;
  int connectivity = 8;
};

// Pre-processing: invert (text becomes bright), TV denoising, white top-hat
// with a circular element. The result is the contrast image reused by the
// post-refinement stage.
GrayImage gpi_preprocess(const GrayImage& img, const GpiConfig& cfg);

// Column detection on the blurred contrast image: maximal runs of columns
// whose summed intensity exceeds valley_threshold * max.
std::vector<ColumnBand> detect_columns(const GrayImage& blurred, const GpiConfig& cfg);

// Per-blob least-squares quadratic through (column, midpoint-y) pairs.
// Blobs spanning fewer than 3 distinct columns degrade to a horizontal
// line through the centroid.
std::vector<BlobCurve> fit_blob_curves(const std::vector<Component>& blobs);

// Rasterize each curve over its extent extended by the extrapolation
// margin, clipped to its band, then dilate the union with the ellipsoidal
// kernel.
BinaryMask build_initial_mask(const std::vector<BlobCurve>& curves,
                              const std::vector<ColumnBand>& bands, const GpiConfig& cfg,
                              int width, int height);

// factor * nearest-rank percentile of the component areas, rounded to the
// nearest pixel count. Throws on an empty list.
std::int64_t compute_area_threshold(const std::vector<std::int64_t>& areas,
                                    double factor = 1.2, double percentile = 0.95);
std::int64_t compute_area_threshold(const std::vector<Component>& train_components,
                                    const GpiConfig& cfg);

// Secondary Otsu on the contrast image; each resulting component is
// assigned to the initial-mask region of maximal intersection (ties to the
// lower region label); components without intersection or larger than
// area_thresh are discarded.
InstanceMap refine_components(const BinaryMask& initial, const GrayImage& contrast,
                              std::int64_t area_thresh, int connectivity = 8);

// Stage outputs for tests and inspection.
struct GpiStages {
  GrayImage contrast;
  GrayImage blurred;
  std::vector<ColumnBand> bands;
  BinaryMask blobs;
  std::vector<BlobCurve> curves;
  BinaryMask initial;
  InstanceMap result;
};

GpiStages run_gpi_stages(const GrayImage& img, const GpiConfig& cfg, std::int64_t area_thresh);

// The full deterministic chain; area_thresh comes from calibration.
InstanceMap run_gpi(const GrayImage& img, const GpiConfig& cfg, std::int64_t area_thresh);

}  // namespace lineseg
