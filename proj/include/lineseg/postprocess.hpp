#pragma once

#include <vector>

#include "lineseg/raster.hpp"

namespace lineseg {

// Closed outer boundary of one component, consecutive points 8-adjacent.
// Traversal is counterclockwise in mathematical (y-up) orientation and
// starts at the topmost-then-leftmost boundary pixel.
struct Contour {
  std::vector<Point> points;
  std::int32_t component_label = 0;
};

// Candidate cut: two contour points close in space but far apart along the
// contour, indicating an erroneous connection between two lines.
struct DisconnectionPair {
  Point p;
  Point q;
  double euclidean_dist = 0.0;
  int contour_gap = 0;  // circular index distance along the contour
};

struct SrcbParams {
  double d_max = 0.0;            // 0 = half the median component height
  int g_min = 0;                 // 0 = 4 * d_max contour steps
  int stroke = 2;                // separating line width, px
  double min_area_factor = 0.05; // cleanup: fraction of the median area
  int connectivity = 8;
};

// One outer contour per component (Moore border following).
std::vector<Contour> trace_contours(const InstanceMap& m);
std::vector<Contour> trace_contours(const BinaryMask& m, int connectivity = 8);

// All index pairs (i, j) with circular gap >= g_min and distance <= d_max,
// reduced by non-maximum suppression: candidates are taken smallest
// distance first, and any candidate with an endpoint within d_max contour
// steps of an accepted pair's endpoints is dropped.
std::vector<DisconnectionPair> find_disconnection_pairs(const Contour& c, double d_max,
                                                        int g_min);

// Erase ink along the p-q segment of every pair, stroke pixels wide.
BinaryMask cut_at_pairs(const BinaryMask& m, const std::vector<DisconnectionPair>& pairs,
                        int stroke = 2);

// Drop components below min_area, relabel survivors 1..K in scan order.
InstanceMap cleanup_and_relabel(const BinaryMask& m, std::int64_t min_area,
                                int connectivity = 8);

// The full chain: contours, disconnection pairs, cuts, cleanup.
InstanceMap srcb_postprocess(const InstanceMap& m, const SrcbParams& params = {});

// Morphological closing cleanup (rectangular element, default 7x7),
// followed by relabeling.
InstanceMap close_postprocess(const InstanceMap& m, int se_w = 7, int se_h = 7,
                              int connectivity = 8);

}  // namespace lineseg
