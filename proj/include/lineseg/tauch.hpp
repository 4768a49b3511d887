#pragma once

#include "lineseg/filters.hpp"
#include "lineseg/raster.hpp"

namespace lineseg {

// Character-height estimate from connected-component bounding boxes.
struct CharHeightStats {
  double mean_height = 0.0;
  double min_plausible = 0.0;
  double max_plausible = 0.0;
  int sample_count = 0;  // 0 marks the bounds-midpoint fallback
};

struct TauchConfig {
  double eta = 3.0;  // anisotropic elongation factor
  int dilation_w = 3;
  int dilation_h = 3;

  enum class BlobThreshold { OtsuOnResponse, Fixed };
  BlobThreshold blob_threshold_mode = BlobThreshold::OtsuOnResponse;
  double blob_threshold = 128.0;  // Fixed mode, on the 0..255 response scale

  // Separator threshold = separator_factor * mean char height (pixels).
  double separator_factor = 6.0;

  // Plausible component-height interval as fractions of the image height.
  double min_height_frac = 0.02;
  double max_height_frac = 0.20;

  // Explicit pixel bounds override the fractions when max > 0 (calibration).
  double min_height_px = 0.0;
  double max_height_px = 0.0;

  int connectivity = 8;

  // Vertical dilation: 1 x round(c * mean char height) element.
  double vertical_dilation_factor = 1.0;

  // sigma_v = sigma_factor * mean char height; sigma_u = eta * sigma_v.
  double sigma_factor = 0.25;
};

// Mean bounding-box height of components whose heights fall inside
// [min_height, max_height]. Throws PipelineError when no component
// qualifies (callers fall back to the interval midpoint).
CharHeightStats estimate_char_height(const BinaryMask& mask, double min_height,
                                     double max_height, int connectivity = 8);

// Stage outputs of the full pipeline, exposed for tests and inspection.
struct TauchStages {
  BinaryMask ink;        // Otsu binarization of the page
  BinaryMask dilated;    // line-continuity dilation
  CharHeightStats stats;
  GrayImage response;    // anisotropic Gaussian of the ink density, 0..255
  BinaryMask blobs;      // thresholded response, one blob per line core
  IntRaster distance;    // vertical distance map of the dilated ink
  BinaryMask separator;  // tall empty corridors (column gutters)
  BinaryMask split;      // blobs cut by the separator
  BinaryMask region;     // text region: vertically dilated blobs ∩ ink
  InstanceMap markers;   // labeled split blobs clipped to the region
  InstanceMap result;    // final normalized segmentation
};

// Line-location detection: binarize, dilate, estimate character height,
// smooth the ink density with the elongated Gaussian, threshold.
BinaryMask detect_line_blobs(const GrayImage& img, const TauchConfig& cfg);

// For each background pixel, distance to the nearest ink pixel above plus
// distance to the nearest ink pixel below within the column; a missing side
// contributes the distance to the image border (virtual ink just outside).
// Ink pixels are 0.
IntRaster vertical_distance_map(const BinaryMask& mask);

// True where the distance map reaches the threshold.
BinaryMask separator_mask(const IntRaster& dmap, int threshold);

// blobs AND NOT separator.
BinaryMask split_blobs(const BinaryMask& blobs, const BinaryMask& separator);

// Blobs vertically dilated by 1 x round(c * mean height), then intersected
// with the ink mask.
BinaryMask extract_text_region(const BinaryMask& blobs, const CharHeightStats& stats,
                               const BinaryMask& ink, double c = 1.0);

// Priority-flood watershed over the relief, restricted to the region and
// seeded by the markers. Flooding spreads 4-connected; lower relief floods
// first, ties resolve by insertion order (deterministic). Marker pixels
// keep their labels. Throws when a marker pixel lies outside the region.
// Region pixels in components containing no marker stay background.
InstanceMap watershed_segment(const InstanceMap& markers, const BinaryMask& region,
                              const GrayImage& relief);

TauchStages run_tauch_stages(const GrayImage& img, const TauchConfig& cfg);

// The full two-stage pipeline: line-location detection, separator split,
// text-region extraction, marker-guided watershed, label normalization.
InstanceMap run_tauch(const GrayImage& img, const TauchConfig& cfg);

}  // namespace lineseg
