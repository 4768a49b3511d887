#include "lineseg/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lineseg {

namespace {

// Clockwise on screen (y grows downward), which is counterclockwise in
// mathematical orientation: E, SE, S, SW, W, NW, N, NE.
constexpr int kMooreDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
constexpr int kMooreDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

Contour trace_one(const InstanceMap& m, Point start, std::int32_t label) {
  Contour contour;
  contour.component_label = label;
  auto is_fg = [&](int x, int y) { return m.in_bounds(x, y) && m.at(x, y) == label; };

  // Scanning the Moore neighborhood clockwise from the neighbor after the
  // one we entered from; the start pixel is topmost-then-leftmost, so its
  // west neighbor (direction 4) is guaranteed background.
  auto next_dir = [&](Point cur, int entered) {
    for (int k = 1; k <= 8; ++k) {
      const int nd = (entered + 5 + k - 1) % 8;
      if (is_fg(cur.x + kMooreDx[nd], cur.y + kMooreDy[nd])) return nd;
    }
    return -1;
  };

  contour.points.push_back(start);
  int d0 = -1;
  for (int k = 1; k <= 8; ++k) {
    const int nd = (4 + k) % 8;
    if (is_fg(start.x + kMooreDx[nd], start.y + kMooreDy[nd])) {
      d0 = nd;
      break;
    }
  }
  if (d0 < 0) return contour;  // isolated pixel

  // Walk until the state (pixel, entering direction) repeats its initial
  // value; the predecessor of that state is always the start pixel, which
  // would otherwise be appended twice.
  const Point second{start.x + kMooreDx[d0], start.y + kMooreDy[d0]};
  Point pos = second;
  int d = d0;
  const std::size_t guard = 4 * m.labels.size() + 16;
  std::size_t steps = 0;
  do {
    contour.points.push_back(pos);
    const int nd = next_dir(pos, d);
    if (nd < 0) break;
    pos = {pos.x + kMooreDx[nd], pos.y + kMooreDy[nd]};
    d = nd;
  } while (!(pos == second && d == d0) && steps++ < guard);
  if (contour.points.size() > 1 && contour.points.back() == start) contour.points.pop_back();
  return contour;
}

}  // namespace

std::vector<Contour> trace_contours(const InstanceMap& m) {
  std::vector<Contour> contours;
  std::vector<char> seen(static_cast<std::size_t>(m.max_label()) + 1, 0);
  for (int y = 0; y < m.height; ++y)
    for (int x = 0; x < m.width; ++x) {
      const std::int32_t l = m.at(x, y);
      if (l <= 0 || seen[l]) continue;
      seen[l] = 1;  // first-encounter pixel is the topmost-leftmost one
      contours.push_back(trace_one(m, {x, y}, l));
    }
  return contours;
}

std::vector<Contour> trace_contours(const BinaryMask& m, int connectivity) {
  return trace_contours(label_components(m, connectivity));
}

std::vector<DisconnectionPair> find_disconnection_pairs(const Contour& c, double d_max,
                                                        int g_min) {
  if (d_max <= 0.0 || g_min <= 0) throw std::invalid_argument("d_max and g_min must be > 0");
  const int n = static_cast<int>(c.points.size());
  struct Candidate {
    int i, j;
    double dist;
  };
  std::vector<Candidate> candidates;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int gap = std::min(j - i, n - (j - i));
      if (gap < g_min) continue;
      const double dx = c.points[i].x - c.points[j].x;
      const double dy = c.points[i].y - c.points[j].y;
      const double dist = std::sqrt(dx * dx + dy * dy);
      if (dist <= d_max) candidates.push_back({i, j, dist});
    }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });

  const int window = std::max(1, static_cast<int>(std::lround(d_max)));
  auto circ_dist = [n](int a, int b) {
    const int d = std::abs(a - b);
    return std::min(d, n - d);
  };
  std::vector<DisconnectionPair> accepted;
  std::vector<std::pair<int, int>> accepted_idx;
  for (const Candidate& cand : candidates) {
    bool suppressed = false;
    for (const auto& [ai, aj] : accepted_idx) {
      if (circ_dist(cand.i, ai) <= window || circ_dist(cand.i, aj) <= window ||
          circ_dist(cand.j, ai) <= window || circ_dist(cand.j, aj) <= window) {
        suppressed = true;
        break;
      }
    }
    if (suppressed) continue;
    accepted_idx.emplace_back(cand.i, cand.j);
    const int gap = std::min(cand.j - cand.i, n - (cand.j - cand.i));
    accepted.push_back({c.points[cand.i], c.points[cand.j], cand.dist, gap});
  }
  return accepted;
}

BinaryMask cut_at_pairs(const BinaryMask& m, const std::vector<DisconnectionPair>& pairs,
                        int stroke) {
  if (stroke < 1) throw std::invalid_argument("stroke must be >= 1");
  BinaryMask out = m;
  const int pen_lo = -(stroke - 1) / 2, pen_hi = stroke / 2;
  auto clear_pen = [&](int x, int y) {
    for (int dy = pen_lo; dy <= pen_hi; ++dy)
      for (int dx = pen_lo; dx <= pen_hi; ++dx)
        if (out.in_bounds(x + dx, y + dy)) out.set(x + dx, y + dy, false);
  };
  for (const DisconnectionPair& pair : pairs) {
    if (!m.in_bounds(pair.p.x, pair.p.y) || !m.in_bounds(pair.q.x, pair.q.y))
      throw std::invalid_argument("disconnection pair out of bounds");
    // Bresenham from p to q.
    int x0 = pair.p.x, y0 = pair.p.y;
    const int x1 = pair.q.x, y1 = pair.q.y;
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
      clear_pen(x0, y0);
      if (x0 == x1 && y0 == y1) break;
      const int e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x0 += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y0 += sy;
      }
    }
  }
  return out;
}

InstanceMap cleanup_and_relabel(const BinaryMask& m, std::int64_t min_area, int connectivity) {
  if (min_area < 0) throw std::invalid_argument("min_area must be >= 0");
  std::vector<ComponentInfo> info;
  const InstanceMap labels = label_components(m, connectivity, &info);
  std::vector<std::int32_t> remap(info.size() + 1, 0);
  std::int32_t next = 0;
  for (const ComponentInfo& c : info)
    if (c.area >= min_area) remap[c.label] = ++next;
  InstanceMap out(m.width, m.height);
  for (std::size_t i = 0; i < labels.labels.size(); ++i)
    out.labels[i] = remap[labels.labels[i]];
  return out;
}

namespace {

std::int64_t median_int(std::vector<std::int64_t> v) {
  if (v.empty()) return 0;
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

}  // namespace

InstanceMap srcb_postprocess(const InstanceMap& m, const SrcbParams& params) {
  const BinaryMask binary = to_binary(m);
  std::vector<ComponentInfo> info;
  label_components(binary, params.connectivity, &info);
  if (info.empty()) return InstanceMap(m.width, m.height);

  std::vector<std::int64_t> heights, areas;
  for (const ComponentInfo& c : info) {
    heights.push_back(c.bbox_height());
    areas.push_back(c.area);
  }
  const double d_max =
      params.d_max > 0.0 ? params.d_max : std::max(2.0, median_int(heights) / 2.0);
  const int g_min =
      params.g_min > 0 ? params.g_min : std::max(1, static_cast<int>(std::lround(4.0 * d_max)));

  std::vector<DisconnectionPair> pairs;
  for (const Contour& contour : trace_contours(binary, params.connectivity)) {
    auto found = find_disconnection_pairs(contour, d_max, g_min);
    pairs.insert(pairs.end(), found.begin(), found.end());
  }
  const BinaryMask cut = cut_at_pairs(binary, pairs, params.stroke);
  const std::int64_t min_area =
      static_cast<std::int64_t>(std::llround(params.min_area_factor *
                                             static_cast<double>(median_int(areas))));
  return cleanup_and_relabel(cut, min_area, params.connectivity);
}

InstanceMap close_postprocess(const InstanceMap& m, int se_w, int se_h, int connectivity) {
  const BinaryMask closed = close(to_binary(m), StructuringElement::rectangle(se_w, se_h));
  return cleanup_and_relabel(closed, 0, connectivity);
}

}  // namespace lineseg
