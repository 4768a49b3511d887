#include "lineseg/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace lineseg {

namespace {

void check_same_dims(int wa, int ha, int wb, int hb) {
  if (wa != wb || ha != hb) throw std::invalid_argument("prediction/ground-truth size mismatch");
}

// Dense label-pair overlap counts: inter[p][g], plus per-label areas.
// Label 0 (background) occupies row/column 0 and is ignored by the metrics.
struct OverlapTable {
  int n_pred = 0;
  int n_gt = 0;
  std::vector<std::int64_t> inter;  // (n_pred+1) x (n_gt+1)
  std::vector<std::int64_t> pred_area, gt_area;

  std::int64_t& at(std::int32_t p, std::int32_t g) {
    return inter[static_cast<std::size_t>(p) * (n_gt + 1) + g];
  }
  std::int64_t at(std::int32_t p, std::int32_t g) const {
    return inter[static_cast<std::size_t>(p) * (n_gt + 1) + g];
  }
};

OverlapTable build_overlap(const InstanceMap& pred, const InstanceMap& gt) {
  check_same_dims(pred.width, pred.height, gt.width, gt.height);
  OverlapTable t;
  t.n_pred = pred.max_label();
  t.n_gt = gt.max_label();
  t.inter.assign(static_cast<std::size_t>(t.n_pred + 1) * (t.n_gt + 1), 0);
  t.pred_area.assign(t.n_pred + 1, 0);
  t.gt_area.assign(t.n_gt + 1, 0);
  for (std::size_t i = 0; i < pred.labels.size(); ++i) {
    const std::int32_t p = pred.labels[i], g = gt.labels[i];
    if (p < 0 || g < 0) throw std::invalid_argument("negative instance label");
    ++t.pred_area[p];
    ++t.gt_area[g];
    if (p > 0 || g > 0) ++t.at(p, g);
  }
  return t;
}

struct ScoredPair {
  std::int32_t p, g;
  double score;
};

// Greedy one-to-one selection in (score desc, pred asc, gt asc) order.
std::vector<MatchPair> greedy_select(std::vector<ScoredPair> pairs, int n_pred, int n_gt) {
  std::sort(pairs.begin(), pairs.end(), [](const ScoredPair& a, const ScoredPair& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.p != b.p) return a.p < b.p;
    return a.g < b.g;
  });
  std::vector<char> p_used(n_pred + 1, 0), g_used(n_gt + 1, 0);
  std::vector<MatchPair> out;
  for (const auto& sp : pairs) {
    if (p_used[sp.p] || g_used[sp.g]) continue;
    p_used[sp.p] = g_used[sp.g] = 1;
    out.push_back({sp.p, sp.g, sp.score});
  }
  return out;
}

std::vector<MatchPair> jaccard_matches(const OverlapTable& t, double threshold) {
  std::vector<ScoredPair> qualifying;
  for (std::int32_t p = 1; p <= t.n_pred; ++p)
    for (std::int32_t g = 1; g <= t.n_gt; ++g) {
      const std::int64_t inter = t.at(p, g);
      if (inter == 0) continue;
      const std::int64_t uni = t.pred_area[p] + t.gt_area[g] - inter;
      const double score = static_cast<double>(inter) / static_cast<double>(uni);
      if (score >= threshold) qualifying.push_back({p, g, score});
    }
  return greedy_select(std::move(qualifying), t.n_pred, t.n_gt);
}

std::vector<MatchPair> precision_recall_matches(const OverlapTable& t, double threshold) {
  std::vector<ScoredPair> qualifying;
  for (std::int32_t p = 1; p <= t.n_pred; ++p)
    for (std::int32_t g = 1; g <= t.n_gt; ++g) {
      const std::int64_t inter = t.at(p, g);
      if (inter == 0) continue;
      const double precision = static_cast<double>(inter) / static_cast<double>(t.pred_area[p]);
      const double recall = static_cast<double>(inter) / static_cast<double>(t.gt_area[g]);
      if (precision >= threshold && recall >= threshold)
        qualifying.push_back({p, g, std::min(precision, recall)});
    }
  return greedy_select(std::move(qualifying), t.n_pred, t.n_gt);
}

double line_iu_from(const OverlapTable& t) {
  const int tp = static_cast<int>(precision_recall_matches(t, 0.75).size());
  const int fp = t.n_pred - tp;
  const int fn = t.n_gt - tp;
  if (tp + fp + fn == 0) return 1.0;  // both maps empty
  return static_cast<double>(tp) / static_cast<double>(tp + fp + fn);
}

}  // namespace

double pixel_iu(const BinaryMask& pred, const BinaryMask& gt) {
  check_same_dims(pred.width, pred.height, gt.width, gt.height);
  std::int64_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.data.size(); ++i) {
    const bool p = pred.data[i] != 0, g = gt.data[i] != 0;
    if (p && g)
      ++tp;
    else if (p)
      ++fp;
    else if (g)
      ++fn;
  }
  if (tp + fp + fn == 0) return 1.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fp + fn);
}

double match_score(const Component& r, const Component& g) {
  // Pixel sets are unordered; count intersections via sorted copies.
  auto key = [](const Point& p) {
    return (static_cast<std::int64_t>(p.y) << 32) | static_cast<std::uint32_t>(p.x);
  };
  std::vector<std::int64_t> a, b;
  a.reserve(r.pixels.size());
  b.reserve(g.pixels.size());
  for (const Point& p : r.pixels) a.push_back(key(p));
  for (const Point& p : g.pixels) b.push_back(key(p));
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::int64_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++inter;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  const std::int64_t uni =
      static_cast<std::int64_t>(a.size()) + static_cast<std::int64_t>(b.size()) - inter;
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<MatchPair> one_to_one_matches(const InstanceMap& pred, const InstanceMap& gt,
                                          double threshold) {
  if (threshold <= 0.0 || threshold > 1.0) throw std::invalid_argument("threshold must be in (0, 1]");
  return jaccard_matches(build_overlap(pred, gt), threshold);
}

double line_iu(const InstanceMap& pred, const InstanceMap& gt) {
  return line_iu_from(build_overlap(pred, gt));
}

DrRaFm dr_ra_fm(int m, int n1, int n2) {
  if (m < 0 || n1 < 0 || n2 < 0) throw std::invalid_argument("counts must be non-negative");
  if (m > n1 || m > n2) throw std::invalid_argument("matches exceed line counts");
  DrRaFm r;
  r.dr = n1 > 0 ? static_cast<double>(m) / n1 : (m == 0 && n2 == 0 ? 1.0 : 0.0);
  r.ra = n2 > 0 ? static_cast<double>(m) / n2 : (m == 0 && n1 == 0 ? 1.0 : 0.0);
  r.fm = r.dr + r.ra > 0.0 ? 2.0 * r.dr * r.ra / (r.dr + r.ra) : 0.0;
  return r;
}

PageMetrics evaluate_page(const InstanceMap& pred, const InstanceMap& gt) {
  const OverlapTable t = build_overlap(pred, gt);

  PageMetrics pm;
  pm.n_pred_lines = t.n_pred;
  pm.n_gt_lines = t.n_gt;

  // Pixel IU from the table: TP = ink overlap of any labels, etc.
  std::int64_t tp = 0;
  for (std::int32_t p = 1; p <= t.n_pred; ++p)
    for (std::int32_t g = 1; g <= t.n_gt; ++g) tp += t.at(p, g);
  std::int64_t pred_ink = 0, gt_ink = 0;
  for (std::int32_t p = 1; p <= t.n_pred; ++p) pred_ink += t.pred_area[p];
  for (std::int32_t g = 1; g <= t.n_gt; ++g) gt_ink += t.gt_area[g];
  const std::int64_t denom = pred_ink + gt_ink - tp;  // TP + FP + FN
  pm.piu = denom == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(denom);

  pm.liu = line_iu_from(t);
  pm.match_pairs = jaccard_matches(t, kMatchThreshold);
  pm.n_matches = static_cast<int>(pm.match_pairs.size());
  const DrRaFm d = dr_ra_fm(pm.n_matches, pm.n_gt_lines, pm.n_pred_lines);
  pm.dr = d.dr;
  pm.ra = d.ra;
  pm.fm = d.fm;
  return pm;
}

ManuscriptReport make_manuscript_report(std::string name, std::vector<PageResult> pages) {
  if (pages.empty()) throw std::invalid_argument("manuscript report requires at least one page");
  ManuscriptReport r;
  r.name = std::move(name);
  r.pages = std::move(pages);
  std::sort(r.pages.begin(), r.pages.end(),
            [](const PageResult& a, const PageResult& b) { return a.page < b.page; });
  for (const PageResult& p : r.pages) {
    r.mean_piu += p.metrics.piu;
    r.mean_liu += p.metrics.liu;
    r.mean_dr += p.metrics.dr;
    r.mean_ra += p.metrics.ra;
    r.mean_fm += p.metrics.fm;
  }
  const double n = static_cast<double>(r.pages.size());
  r.mean_piu /= n;
  r.mean_liu /= n;
  r.mean_dr /= n;
  r.mean_ra /= n;
  r.mean_fm /= n;
  return r;
}

SystemReport aggregate(std::string system, std::vector<ManuscriptReport> manuscripts) {
  if (manuscripts.empty()) throw std::invalid_argument("aggregate requires at least one manuscript");
  SystemReport s;
  s.system = std::move(system);
  s.manuscripts = std::move(manuscripts);
  std::sort(s.manuscripts.begin(), s.manuscripts.end(),
            [](const ManuscriptReport& a, const ManuscriptReport& b) { return a.name < b.name; });
  for (const ManuscriptReport& m : s.manuscripts) s.overall_liu += m.mean_liu;
  s.overall_liu /= static_cast<double>(s.manuscripts.size());
  return s;
}

Leaderboard make_leaderboard(std::vector<SystemReport> systems) {
  Leaderboard lb;
  lb.entries = std::move(systems);
  std::sort(lb.entries.begin(), lb.entries.end(), [](const SystemReport& a, const SystemReport& b) {
    if (a.overall_liu != b.overall_liu) return a.overall_liu > b.overall_liu;
    return a.system < b.system;
  });
  return lb;
}

}  // namespace lineseg
