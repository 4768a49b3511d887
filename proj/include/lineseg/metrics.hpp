#pragma once

#include <string>
#include <vector>

#include "lineseg/raster.hpp"

namespace lineseg {

// One accepted (prediction, ground truth) line pair.
struct MatchPair {
  std::int32_t pred_label = 0;
  std::int32_t gt_label = 0;
  double score = 0.0;
};

// The five per-page metrics plus the counts behind them.
struct PageMetrics {
  double piu = 0.0;
  double liu = 0.0;
  double dr = 0.0;
  double ra = 0.0;
  double fm = 0.0;
  int n_gt_lines = 0;    // N1
  int n_pred_lines = 0;  // N2
  int n_matches = 0;     // M
  std::vector<MatchPair> match_pairs;
};

struct DrRaFm {
  double dr = 0.0;
  double ra = 0.0;
  double fm = 0.0;
};

// Jaccard threshold used for one-to-one matching throughout (inclusive).
inline constexpr double kMatchThreshold = 0.75;

// Pixel-level IU: TP / (TP + FP + FN) over the ink masks. Both masks empty
// yields 1.0. Throws on dimension mismatch.
double pixel_iu(const BinaryMask& pred, const BinaryMask& gt);

// |R ∩ G| / |R ∪ G| over the two pixel sets.
double match_score(const Component& r, const Component& g);

// All one-to-one pairs with MatchScore >= threshold, selected greedily in
// descending score order (each line used at most once). For thresholds
// above 0.5 the greedy set equals the full qualifying set.
std::vector<MatchPair> one_to_one_matches(const InstanceMap& pred, const InstanceMap& gt,
                                          double threshold = kMatchThreshold);

// Line-level IU: a (pred, gt) pair matches when per-pair pixel precision
// and recall are both >= 0.75; TP = matches, FP = unmatched predictions,
// FN = unmatched ground-truth lines. Both maps empty yields 1.0.
double line_iu(const InstanceMap& pred, const InstanceMap& gt);

// DR = M/N1, RA = M/N2, FM = harmonic mean. Degenerate denominators: a
// zero count scores 1.0 when there is nothing to find and nothing found
// (M = 0 and the other count 0), else 0.0; FM = 0 when DR + RA = 0.
DrRaFm dr_ra_fm(int m, int n1, int n2);

// All five metrics for one page (matching at the 0.75 threshold).
PageMetrics evaluate_page(const InstanceMap& pred, const InstanceMap& gt);

// Per-page result in a dataset context.
struct PageResult {
  std::string manuscript;
  std::string page;
  PageMetrics metrics;
  bool missing_pred = false;
};

struct ManuscriptReport {
  std::string name;
  std::vector<PageResult> pages;
  double mean_piu = 0.0, mean_liu = 0.0, mean_dr = 0.0, mean_ra = 0.0, mean_fm = 0.0;
};

struct SystemReport {
  std::string system;
  std::vector<ManuscriptReport> manuscripts;  // sorted by name
  double overall_liu = 0.0;                   // mean of manuscript LIU means
};

struct Leaderboard {
  std::vector<SystemReport> entries;  // ranked: overall LIU desc, ties by name
};

// Averages the page metrics; throws on an empty page list.
ManuscriptReport make_manuscript_report(std::string name, std::vector<PageResult> pages);

// Per-manuscript means plus the overall average-LIU ranking score.
SystemReport aggregate(std::string system, std::vector<ManuscriptReport> manuscripts);

Leaderboard make_leaderboard(std::vector<SystemReport> systems);

}  // namespace lineseg
