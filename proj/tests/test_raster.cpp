#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <set>

#include "lineseg/raster.hpp"
#include "lineseg/rng.hpp"
#include "oracles.hpp"

using namespace lineseg;

namespace {

BinaryMask mask_from(std::initializer_list<const char*> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = static_cast<int>(std::string_view(*rows.begin()).size());
  BinaryMask m(w, h, false);
  int y = 0;
  for (const char* row : rows) {
    for (int x = 0; x < w; ++x) m.set(x, y, row[x] == 'X');
    ++y;
  }
  return m;
}

bool masks_equal(const BinaryMask& a, const BinaryMask& b) {
  return a.width == b.width && a.height == b.height && a.data == b.data;
}

}  // namespace

TEST_CASE("connected_components basics") {
  CHECK(connected_components(BinaryMask(4, 4, false)).empty());

  BinaryMask one(4, 4, false);
  one.set(1, 1, true);
  const auto comps = connected_components(one);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].label == 1);
  CHECK(comps[0].area == 1);
  CHECK(comps[0].min_x == 1);
  CHECK(comps[0].max_x == 1);
  CHECK(comps[0].min_y == 1);
  CHECK(comps[0].max_y == 1);

  BinaryMask diag(4, 4, false);
  diag.set(0, 0, true);
  diag.set(1, 1, true);
  CHECK(connected_components(diag, 4).size() == 2);
  CHECK(connected_components(diag, 8).size() == 1);

  CHECK_THROWS_AS(connected_components(diag, 6), std::invalid_argument);
}

TEST_CASE("connected_components labels follow scan order") {
  const BinaryMask m = mask_from({
      ".X.X",
      "....",
      "X...",
  });
  const auto comps = connected_components(m, 8);
  REQUIRE(comps.size() == 3);
  CHECK(comps[0].pixels[0] == Point{1, 0});
  CHECK(comps[1].pixels[0] == Point{3, 0});
  CHECK(comps[2].pixels[0] == Point{0, 2});
}

TEST_CASE("connected_components partition the ink") {
  Rng rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const BinaryMask m = oracles::random_mask(rng, 16, 16);
    for (int connectivity : {4, 8}) {
      const auto comps = connected_components(m, connectivity);
      std::set<std::pair<int, int>> seen;
      std::int64_t total = 0;
      for (const Component& c : comps) {
        CHECK(c.area == static_cast<std::int64_t>(c.pixels.size()));
        for (const Point& p : c.pixels) {
          CHECK(m.at(p.x, p.y));
          CHECK(seen.insert({p.x, p.y}).second);  // pairwise disjoint
          CHECK(p.x >= c.min_x);
          CHECK(p.x <= c.max_x);
          CHECK(p.y >= c.min_y);
          CHECK(p.y <= c.max_y);
        }
        total += c.area;
      }
      CHECK(total == m.count());  // union covers the ink
    }
  }
}

TEST_CASE("dilate matches the set-union oracle") {
  CHECK(dilate(BinaryMask(5, 5, false), StructuringElement::rectangle(3, 3)).count() == 0);

  BinaryMask center(3, 3, false);
  center.set(1, 1, true);
  CHECK(dilate(center, StructuringElement::rectangle(3, 3)).count() == 9);

  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask m = oracles::random_mask(rng, 8, 8);
    for (const auto& se : {StructuringElement::rectangle(3, 3), StructuringElement::circle(2),
                           StructuringElement::ellipse(5, 3), StructuringElement::rectangle(1, 5)}) {
      CHECK(masks_equal(dilate(m, se), oracles::brute_dilate(m, se)));
    }
  }
}

TEST_CASE("erode matches the all-offsets oracle") {
  const auto se = StructuringElement::rectangle(3, 3);

  BinaryMask full(5, 4, true);
  const BinaryMask eroded = erode(full, se);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 5; ++x) {
      const bool interior = x > 0 && x < 4 && y > 0 && y < 3;
      CHECK(eroded.at(x, y) == interior);
    }

  BinaryMask single(5, 5, false);
  single.set(2, 2, true);
  CHECK(erode(single, se).count() == 0);

  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const BinaryMask m = oracles::random_mask(rng, 8, 8, 0.7);
    for (const auto& s : {StructuringElement::rectangle(3, 3), StructuringElement::circle(1),
                          StructuringElement::ellipse(3, 5)}) {
      CHECK(masks_equal(erode(m, s), oracles::brute_erode(m, s)));
    }
  }
}

TEST_CASE("erode/dilate duality on interior pixels") {
  Rng rng(9);
  const auto se = StructuringElement::rectangle(3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryMask m = oracles::random_mask(rng, 16, 16, 0.5);
    BinaryMask complement(16, 16, false);
    for (std::size_t i = 0; i < m.data.size(); ++i) complement.data[i] = !m.data[i];
    const BinaryMask lhs = erode(m, se);
    const BinaryMask rhs = dilate(complement, se);
    for (int y = 1; y < 15; ++y)
      for (int x = 1; x < 15; ++x) CHECK(lhs.at(x, y) == !rhs.at(x, y));
  }
}

TEST_CASE("dilation is monotone") {
  Rng rng(10);
  const auto se = StructuringElement::circle(2);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryMask m2 = oracles::random_mask(rng, 12, 12, 0.5);
    BinaryMask m1 = m2;
    for (auto& v : m1.data)
      if (v && rng.next_unit() < 0.5) v = 0;
    const BinaryMask d1 = dilate(m1, se), d2 = dilate(m2, se);
    for (std::size_t i = 0; i < d1.data.size(); ++i)
      CHECK(static_cast<int>(d1.data[i]) <= static_cast<int>(d2.data[i]));
  }
}

TEST_CASE("close fills gaps, is extensive and idempotent") {
  const auto se = StructuringElement::rectangle(3, 3);
  const BinaryMask gap = mask_from({
      "........",
      "XXX.XXX.",
      "........",
  });
  const BinaryMask closed = close(gap, se);
  CHECK(closed.at(3, 1));  // one-pixel gap filled

  CHECK(close(BinaryMask(6, 6, false), se).count() == 0);

  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const BinaryMask m = oracles::random_mask(rng, 12, 12);
    const BinaryMask once = close(m, se);
    for (std::size_t i = 0; i < m.data.size(); ++i)
      CHECK(static_cast<int>(m.data[i]) <= static_cast<int>(once.data[i]));  // extensive
    CHECK(masks_equal(close(once, se), once));                               // idempotent
  }
}

TEST_CASE("closing dilate-then-erode recovers supersets") {
  Rng rng(12);
  const auto se = StructuringElement::rectangle(3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    const BinaryMask m = oracles::random_mask(rng, 10, 10);
    const BinaryMask back = erode(dilate(m, se), se);
    for (std::size_t i = 0; i < m.data.size(); ++i)
      CHECK(static_cast<int>(m.data[i]) <= static_cast<int>(back.data[i]));
  }
}

TEST_CASE("top_hat") {
  const auto se = StructuringElement::circle(2);

  CHECK(top_hat(GrayImage(6, 6, 133.0), se).data ==
        GrayImage(6, 6, 0.0).data);  // opening of a constant is itself

  GrayImage spot(9, 9, 20.0);
  spot.at(4, 4) = 200.0;
  const GrayImage th = top_hat(spot, se);
  CHECK(th.at(4, 4) == doctest::Approx(180.0));  // preserved at original contrast
  CHECK(th.at(0, 0) == doctest::Approx(0.0));

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const GrayImage img = oracles::random_image(rng, 8, 8);
    const GrayImage ours = top_hat(img, se);
    const GrayImage ref = oracles::brute_top_hat(img, se);
    for (std::size_t i = 0; i < ours.data.size(); ++i)
      CHECK(ours.data[i] == doctest::Approx(ref.data[i]).epsilon(1e-12));
  }
}

TEST_CASE("gray morphology matches min/max oracle") {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const GrayImage img = oracles::random_image(rng, 8, 8);
    for (const auto& se : {StructuringElement::rectangle(3, 5), StructuringElement::circle(2)}) {
      CHECK(gray_dilate(img, se).data == oracles::brute_gray_dilate(img, se).data);
      CHECK(gray_erode(img, se).data == oracles::brute_gray_erode(img, se).data);
    }
  }
}

TEST_CASE("to_grayscale luminance") {
  RgbImage rgb(3, 1);
  auto set = [&](int x, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    rgb.px(x, 0)[0] = r;
    rgb.px(x, 0)[1] = g;
    rgb.px(x, 0)[2] = b;
  };
  set(0, 255, 255, 255);
  set(1, 0, 0, 0);
  set(2, 255, 0, 0);
  const GrayImage g = to_grayscale(rgb);
  CHECK(g.at(0, 0) == 255.0);
  CHECK(g.at(1, 0) == 0.0);
  CHECK(g.at(2, 0) == 76.0);  // 0.299 * 255 = 76.245, rounded half-up
}

TEST_CASE("normalize_labels") {
  InstanceMap m(3, 1);
  m.set(0, 0, 5);
  m.set(2, 0, 9);
  const InstanceMap n = normalize_labels(m);
  CHECK(n.at(0, 0) == 1);
  CHECK(n.at(1, 0) == 0);
  CHECK(n.at(2, 0) == 2);

  CHECK(normalize_labels(n).labels == n.labels);  // idempotent

  // a label id that never occurs in pixels is absent from the output range
  InstanceMap sparse(2, 1);
  sparse.set(0, 0, 2);
  sparse.set(1, 0, 7);
  const InstanceMap ns = normalize_labels(sparse);
  CHECK(ns.max_label() == 2);
}

TEST_CASE("normalize_labels preserves pixel equivalence classes") {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    InstanceMap m = oracles::random_instances(rng, 12, 12, 5);
    // scramble the ids
    for (auto& l : m.labels)
      if (l > 0) l = l * 37 + 5;
    const InstanceMap n = normalize_labels(m);
    REQUIRE(n.labels.size() == m.labels.size());
    for (std::size_t i = 0; i < m.labels.size(); ++i)
      for (std::size_t j = 0; j < m.labels.size(); ++j) {
        if (m.labels[i] == 0 || m.labels[j] == 0) continue;
        CHECK((m.labels[i] == m.labels[j]) == (n.labels[i] == n.labels[j]));
      }
    break;  // the double loop is quadratic; one scrambled map suffices
  }
}

TEST_CASE("structuring element factories") {
  const auto rect = StructuringElement::rectangle(3, 5);
  CHECK(rect.offsets.size() == 15);
  const auto circ = StructuringElement::circle(2);
  CHECK(std::count(circ.offsets.begin(), circ.offsets.end(), Point{0, 0}) == 1);
  CHECK(std::count(circ.offsets.begin(), circ.offsets.end(), Point{2, 0}) == 1);
  CHECK(std::count(circ.offsets.begin(), circ.offsets.end(), Point{2, 2}) == 0);
  // symmetric
  for (const auto& se : {rect, circ, StructuringElement::ellipse(7, 3)})
    for (const Point& o : se.offsets)
      CHECK(std::count(se.offsets.begin(), se.offsets.end(), Point{-o.x, -o.y}) == 1);

  CHECK_THROWS_AS(StructuringElement::rectangle(4, 3), std::invalid_argument);
  CHECK_THROWS_AS(StructuringElement::from_offsets({{1, 0}}), std::invalid_argument);
}
