#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "lineseg/metrics.hpp"
#include "lineseg/raster.hpp"
#include "lineseg/rng.hpp"
#include "oracles.hpp"

using namespace lineseg;

namespace {

InstanceMap strip(std::initializer_list<std::int32_t> labels) {
  InstanceMap m(static_cast<int>(labels.size()), 1);
  int x = 0;
  for (std::int32_t l : labels) m.set(x++, 0, l);
  return m;
}

Component component_from(std::initializer_list<Point> pts) {
  Component c;
  c.label = 1;
  for (const Point& p : pts) c.pixels.push_back(p);
  c.area = static_cast<std::int64_t>(c.pixels.size());
  return c;
}

}  // namespace

TEST_CASE("pixel_iu") {
  BinaryMask a(4, 1, false), b(4, 1, false);
  a.set(0, 0, true);
  a.set(1, 0, true);
  b.set(1, 0, true);
  b.set(2, 0, true);
  CHECK(pixel_iu(a, b) == doctest::Approx(1.0 / 3.0));
  CHECK(pixel_iu(a, a) == 1.0);
  CHECK(pixel_iu(BinaryMask(4, 1, false), b) == 0.0);
  CHECK(pixel_iu(BinaryMask(4, 1, false), BinaryMask(4, 1, false)) == 1.0);
  CHECK(pixel_iu(a, b) == pixel_iu(b, a));
  CHECK_THROWS_AS(pixel_iu(a, BinaryMask(5, 1, false)), std::invalid_argument);
}

TEST_CASE("match_score") {
  const Component a = component_from({{0, 0}, {1, 0}, {2, 0}});
  CHECK(match_score(a, a) == 1.0);
  const Component b = component_from({{5, 5}, {6, 5}});
  CHECK(match_score(a, b) == 0.0);

  Component r, g;
  for (int i = 0; i < 8; ++i) r.pixels.push_back({i, 0});
  for (int i = 2; i < 10; ++i) g.pixels.push_back({i, 0});
  CHECK(match_score(r, g) == doctest::Approx(0.6));  // 6 / 10
  CHECK(match_score(r, g) == match_score(g, r));
}

TEST_CASE("one_to_one_matches") {
  const InstanceMap gt = strip({1, 1, 1, 2, 2, 2, 0, 3, 3, 3});
  const auto perfect = one_to_one_matches(gt, gt, 0.75);
  REQUIRE(perfect.size() == 3);
  for (const MatchPair& p : perfect) CHECK(p.score == 1.0);

  // one prediction spanning two ground-truth lines matches neither
  const InstanceMap pred = normalize_labels(strip({1, 1, 1, 1, 1, 1, 0, 3, 3, 3}));
  const auto partial = one_to_one_matches(pred, gt, 0.75);
  REQUIRE(partial.size() == 1);
  CHECK(partial[0].gt_label == 3);

  CHECK_THROWS_AS(one_to_one_matches(gt, gt, 0.0), std::invalid_argument);
}

TEST_CASE("matching equals the exhaustive oracle on random maps") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const InstanceMap pred = oracles::random_instances(rng, 10, 10, 4);
    const InstanceMap gt = oracles::random_instances(rng, 10, 10, 4);
    const auto matches = one_to_one_matches(pred, gt, 0.75);
    const auto brute = oracles::brute_evaluate(pred, gt);
    CHECK(static_cast<int>(matches.size()) == brute.n_matches);
  }
}

TEST_CASE("line_iu") {
  const InstanceMap gt = strip({1, 1, 1, 1, 0, 2, 2, 2, 2, 0, 3, 3, 3, 3});
  CHECK(line_iu(gt, gt) == 1.0);

  // K correct lines plus one spurious -> K / (K + 1)
  InstanceMap extra = gt;
  extra.set(4, 0, 4);
  CHECK(line_iu(normalize_labels(extra), gt) == doctest::Approx(3.0 / 4.0));

  // 70% recall at full precision misses the threshold
  InstanceMap partial(10, 1);
  InstanceMap gt10(10, 1);
  for (int x = 0; x < 10; ++x) gt10.set(x, 0, 1);
  for (int x = 0; x < 7; ++x) partial.set(x, 0, 1);
  CHECK(line_iu(partial, gt10) == 0.0);

  CHECK(line_iu(InstanceMap(4, 4), InstanceMap(4, 4)) == 1.0);  // both empty
}

TEST_CASE("dr_ra_fm") {
  const DrRaFm spot = dr_ra_fm(3, 4, 6);
  CHECK(spot.dr == 0.75);
  CHECK(spot.ra == 0.5);
  CHECK(spot.fm == doctest::Approx(0.6));

  const DrRaFm perfect = dr_ra_fm(7, 7, 7);
  CHECK(perfect.dr == 1.0);
  CHECK(perfect.ra == 1.0);
  CHECK(perfect.fm == 1.0);

  const DrRaFm zero = dr_ra_fm(0, 5, 5);
  CHECK(zero.dr == 0.0);
  CHECK(zero.fm == 0.0);

  // degenerate denominators
  CHECK(dr_ra_fm(0, 0, 0).dr == 1.0);
  CHECK(dr_ra_fm(0, 0, 0).ra == 1.0);
  CHECK(dr_ra_fm(0, 0, 3).dr == 0.0);
  CHECK(dr_ra_fm(0, 3, 0).ra == 0.0);

  CHECK_THROWS_AS(dr_ra_fm(5, 4, 6), std::invalid_argument);
  CHECK_THROWS_AS(dr_ra_fm(5, 6, 4), std::invalid_argument);
}

TEST_CASE("evaluate_page on identical maps") {
  Rng rng(32);
  const InstanceMap m = oracles::random_instances(rng, 14, 14, 5);
  const PageMetrics pm = evaluate_page(m, m);
  CHECK(pm.piu == 1.0);
  CHECK(pm.liu == 1.0);
  CHECK(pm.dr == 1.0);
  CHECK(pm.ra == 1.0);
  CHECK(pm.fm == 1.0);
  CHECK(pm.n_matches == pm.n_gt_lines);
}

TEST_CASE("evaluate_page on an empty prediction") {
  const InstanceMap gt = strip({1, 1, 0, 2, 2});
  const PageMetrics pm = evaluate_page(InstanceMap(5, 1), gt);
  CHECK(pm.piu == 0.0);
  CHECK(pm.liu == 0.0);
  CHECK(pm.dr == 0.0);
  CHECK(pm.ra == 0.0);  // N2 = 0 with N1 > 0
  CHECK(pm.fm == 0.0);
}

TEST_CASE("evaluate_page equals the brute-force reimplementation") {
  Rng rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const InstanceMap pred = oracles::random_instances(rng, 12, 12, 5);
    const InstanceMap gt = oracles::random_instances(rng, 12, 12, 5);
    const PageMetrics pm = evaluate_page(pred, gt);
    const auto brute = oracles::brute_evaluate(pred, gt);
    CHECK(pm.n_gt_lines == brute.n_gt);
    CHECK(pm.n_pred_lines == brute.n_pred);
    CHECK(pm.n_matches == brute.n_matches);
    CHECK(std::abs(pm.piu - brute.piu) <= 1e-12);
    CHECK(std::abs(pm.liu - brute.liu) <= 1e-12);
    CHECK(std::abs(pm.dr - brute.dr) <= 1e-12);
    CHECK(std::abs(pm.ra - brute.ra) <= 1e-12);
    CHECK(std::abs(pm.fm - brute.fm) <= 1e-12);
  }
}

TEST_CASE("metrics are invariant under label permutation") {
  Rng rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    const InstanceMap pred = oracles::random_instances(rng, 12, 12, 5);
    const InstanceMap gt = oracles::random_instances(rng, 12, 12, 5);
    InstanceMap pred_permuted = pred;
    const std::int32_t n = pred.max_label();
    for (auto& l : pred_permuted.labels)
      if (l > 0) l = n + 1 - l;  // reverse the ids
    const PageMetrics a = evaluate_page(pred, gt);
    const PageMetrics b = evaluate_page(pred_permuted, gt);
    CHECK(a.piu == b.piu);
    CHECK(a.liu == b.liu);
    CHECK(a.dr == b.dr);
    CHECK(a.ra == b.ra);
    CHECK(a.fm == b.fm);
  }
}

TEST_CASE("metrics are invariant under joint translation") {
  Rng rng(35);
  const InstanceMap pred = oracles::random_instances(rng, 8, 8, 4);
  const InstanceMap gt = oracles::random_instances(rng, 8, 8, 4);
  auto shift = [](const InstanceMap& m, int ox, int oy) {
    InstanceMap out(m.width + 6, m.height + 6);
    for (int y = 0; y < m.height; ++y)
      for (int x = 0; x < m.width; ++x) out.set(x + ox, y + oy, m.at(x, y));
    return out;
  };
  const PageMetrics a = evaluate_page(shift(pred, 1, 1), shift(gt, 1, 1));
  const PageMetrics b = evaluate_page(shift(pred, 4, 3), shift(gt, 4, 3));
  CHECK(a.piu == b.piu);
  CHECK(a.liu == b.liu);
  CHECK(a.dr == b.dr);
  CHECK(a.ra == b.ra);
  CHECK(a.fm == b.fm);
}

TEST_CASE("qualifying pairs at 0.75 are one-to-one") {
  Rng rng(36);
  for (int trial = 0; trial < 500; ++trial) {
    const InstanceMap pred = oracles::random_instances(rng, 10, 10, 6);
    const InstanceMap gt = oracles::random_instances(rng, 10, 10, 6);
    // count qualifying pairs directly per line
    const auto matches = one_to_one_matches(pred, gt, 0.75);
    std::vector<int> pred_uses(pred.max_label() + 1, 0), gt_uses(gt.max_label() + 1, 0);
    for (const MatchPair& mp : matches) {
      pred_uses[mp.pred_label]++;
      gt_uses[mp.gt_label]++;
    }
    for (int u : pred_uses) CHECK(u <= 1);
    for (int u : gt_uses) CHECK(u <= 1);
    // and the greedy selection kept every qualifying pair
    CHECK(static_cast<int>(matches.size()) == oracles::brute_evaluate(pred, gt).n_matches);
  }
}

TEST_CASE("removing a matched prediction degrades LIU and DR") {
  const InstanceMap gt = strip({1, 1, 1, 0, 2, 2, 2, 0, 3, 3, 3});
  InstanceMap pred = gt;
  for (auto& l : pred.labels)
    if (l == 3) l = 0;  // drop one predicted line
  const PageMetrics full = evaluate_page(gt, gt);
  const PageMetrics cut = evaluate_page(normalize_labels(pred), gt);
  CHECK(cut.n_matches == full.n_matches - 1);
  CHECK(cut.n_pred_lines == full.n_pred_lines - 1);
  CHECK(cut.liu < full.liu);
  CHECK(cut.dr < full.dr);
  CHECK(cut.ra == 1.0);
}

TEST_CASE("aggregate and leaderboard") {
  auto page = [](const std::string& name, double liu) {
    PageResult r;
    r.manuscript = name;
    r.page = "p0";
    r.metrics.liu = liu;
    return r;
  };
  ManuscriptReport m1 = make_manuscript_report("m1", {page("m1", 0.9)});
  ManuscriptReport m2 = make_manuscript_report("m2", {page("m2", 0.8)});
  ManuscriptReport m3 = make_manuscript_report("m3", {page("m3", 1.0)});
  CHECK(m1.mean_liu == doctest::Approx(0.9));

  const SystemReport sys = aggregate("a", {m1, m2, m3});
  CHECK(sys.overall_liu == doctest::Approx(0.9));

  SystemReport better = sys;
  better.system = "b";
  better.overall_liu = 0.95;
  SystemReport tie = sys;
  tie.system = "c";

  const Leaderboard lb = make_leaderboard({tie, better, sys});
  REQUIRE(lb.entries.size() == 3);
  CHECK(lb.entries[0].system == "b");
  CHECK(lb.entries[1].system == "a");  // ties break by name
  CHECK(lb.entries[2].system == "c");

  CHECK_THROWS_AS(make_manuscript_report("x", {}), std::invalid_argument);
  CHECK_THROWS_AS(aggregate("x", {}), std::invalid_argument);
}
