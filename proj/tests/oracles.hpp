#pragma once

// Independent reference implementations used to check the library. These
// deliberately avoid the production code paths: set arithmetic instead of
// label tables, exhaustive scans instead of incremental updates, direct
// double loops instead of run decompositions.

#include <cstdint>
#include <set>
#include <vector>

#include "lineseg/filters.hpp"
#include "lineseg/metrics.hpp"
#include "lineseg/raster.hpp"
#include "lineseg/rng.hpp"

namespace oracles {

using lineseg::AnisoGaussParams;
using lineseg::BinaryMask;
using lineseg::GrayImage;
using lineseg::InstanceMap;
using lineseg::StructuringElement;

// --- morphology ------------------------------------------------------------

BinaryMask brute_dilate(const BinaryMask& m, const StructuringElement& se);
BinaryMask brute_erode(const BinaryMask& m, const StructuringElement& se);
GrayImage brute_gray_dilate(const GrayImage& img, const StructuringElement& se);
GrayImage brute_gray_erode(const GrayImage& img, const StructuringElement& se);
GrayImage brute_top_hat(const GrayImage& img, const StructuringElement& se);

// --- thresholds ------------------------------------------------------------

// Exhaustive scan of all 256 thresholds, maximizing the between-class
// variance w0*w1*(mu0-mu1)^2 compared in exact big-integer rationals.
int exhaustive_otsu(const std::vector<std::int64_t>& hist256);
int exhaustive_otsu(const GrayImage& img);

BinaryMask naive_sauvola(const GrayImage& img, int window, double k, double R);

// --- convolutions ----------------------------------------------------------

GrayImage naive_anisotropic_gaussian(const GrayImage& img, const AnisoGaussParams& p);
GrayImage naive_box_mean(const GrayImage& img, int kw, int kh);

// --- watershed -------------------------------------------------------------

// Multi-source BFS on uniform relief: sources enqueued in row-major order,
// claims at discovery, FIFO expansion, neighbors N,W,E,S.
InstanceMap bfs_watershed(const InstanceMap& markers, const BinaryMask& region);

// --- metrics ---------------------------------------------------------------

struct BruteMetrics {
  double piu, liu, dr, ra, fm;
  int n_gt, n_pred, n_matches;
};

// Exhaustive pair enumeration over std::set pixel sets.
BruteMetrics brute_evaluate(const InstanceMap& pred, const InstanceMap& gt);

// --- geometry --------------------------------------------------------------

// Boundary pixels of each label: foreground pixels with a background or
// out-of-bounds 4-neighbor.
std::set<std::pair<int, int>> boundary_pixels(const InstanceMap& m, std::int32_t label);

// Quadratic least squares through (x, y) points via Cramer's rule in long
// double; points.size() >= 3 and distinct x values assumed.
void cramer_quadratic(const std::vector<std::pair<double, double>>& pts, double& a, double& b,
                      double& c);

// --- random inputs ---------------------------------------------------------

BinaryMask random_mask(lineseg::Rng& rng, int w, int h, double fill = 0.4);
GrayImage random_image(lineseg::Rng& rng, int w, int h);
// Random instance map with up to max_labels blobby instances.
InstanceMap random_instances(lineseg::Rng& rng, int w, int h, int max_labels);

}  // namespace oracles
