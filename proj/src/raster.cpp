#include "lineseg/raster.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace lineseg {

std::int64_t BinaryMask::count() const {
  std::int64_t n = 0;
  for (std::uint8_t v : data) n += v;
  return n;
}

std::int32_t InstanceMap::max_label() const {
  std::int32_t m = 0;
  for (std::int32_t v : labels) m = std::max(m, v);
  return m;
}

namespace {

void require_odd_size(int w, int h) {
  if (w < 1 || h < 1 || w % 2 == 0 || h % 2 == 0)
    throw std::invalid_argument("structuring element sizes must be odd and >= 1");
}

std::vector<StructuringElement::Run> build_runs(const std::vector<Point>& offsets) {
  std::vector<StructuringElement::Run> runs;
  for (std::size_t i = 0; i < offsets.size();) {
    std::size_t j = i + 1;
    while (j < offsets.size() && offsets[j].y == offsets[i].y &&
           offsets[j].x == offsets[j - 1].x + 1)
      ++j;
    runs.push_back({offsets[i].y, offsets[i].x, offsets[j - 1].x});
    i = j;
  }
  return runs;
}

bool offset_order(const Point& a, const Point& b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

StructuringElement finish(std::vector<Point> offsets) {
  std::sort(offsets.begin(), offsets.end(), offset_order);
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  StructuringElement se;
  se.runs = build_runs(offsets);
  se.offsets = std::move(offsets);
  return se;
}

}  // namespace

StructuringElement StructuringElement::rectangle(int w, int h) {
  require_odd_size(w, h);
  std::vector<Point> offs;
  for (int dy = -(h - 1) / 2; dy <= (h - 1) / 2; ++dy)
    for (int dx = -(w - 1) / 2; dx <= (w - 1) / 2; ++dx) offs.push_back({dx, dy});
  return finish(std::move(offs));
}

StructuringElement StructuringElement::ellipse(int w, int h) {
  require_odd_size(w, h);
  const double a = (w - 1) / 2.0, b = (h - 1) / 2.0;
  std::vector<Point> offs;
  for (int dy = -(h - 1) / 2; dy <= (h - 1) / 2; ++dy)
    for (int dx = -(w - 1) / 2; dx <= (w - 1) / 2; ++dx) {
      const double nx = a > 0 ? dx / a : 0.0;
      const double ny = b > 0 ? dy / b : 0.0;
      if (nx * nx + ny * ny <= 1.0 + 1e-9) offs.push_back({dx, dy});
    }
  return finish(std::move(offs));
}

StructuringElement StructuringElement::circle(int r) {
  if (r < 0) throw std::invalid_argument("circle radius must be >= 0");
  std::vector<Point> offs;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx)
      if (dx * dx + dy * dy <= r * r) offs.push_back({dx, dy});
  return finish(std::move(offs));
}

StructuringElement StructuringElement::from_offsets(std::vector<Point> offsets) {
  if (std::find(offsets.begin(), offsets.end(), Point{0, 0}) == offsets.end())
    throw std::invalid_argument("structuring element must contain the origin");
  return finish(std::move(offsets));
}

namespace {

constexpr int kDx8[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
constexpr int kDy8[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr int kDx4[4] = {0, -1, 1, 0};
constexpr int kDy4[4] = {-1, 0, 0, 1};

void check_connectivity(int connectivity) {
  if (connectivity != 4 && connectivity != 8)
    throw std::invalid_argument("connectivity must be 4 or 8");
}

}  // namespace

InstanceMap label_components(const BinaryMask& mask, int connectivity,
                             std::vector<ComponentInfo>* info) {
  check_connectivity(connectivity);
  const int w = mask.width, h = mask.height;
  InstanceMap out(w, h);
  if (info) info->clear();

  const int* dxs = connectivity == 8 ? kDx8 : kDx4;
  const int* dys = connectivity == 8 ? kDy8 : kDy4;
  const int nn = connectivity;

  std::vector<Point> stack;
  std::int32_t next_label = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y) || out.at(x, y) != 0) continue;
      ++next_label;
      ComponentInfo ci{next_label, 0, x, y, x, y};
      stack.push_back({x, y});
      out.set(x, y, next_label);
      while (!stack.empty()) {
        const Point p = stack.back();
        stack.pop_back();
        ++ci.area;
        ci.min_x = std::min(ci.min_x, p.x);
        ci.max_x = std::max(ci.max_x, p.x);
        ci.min_y = std::min(ci.min_y, p.y);
        ci.max_y = std::max(ci.max_y, p.y);
        for (int k = 0; k < nn; ++k) {
          const int nx = p.x + dxs[k], ny = p.y + dys[k];
          if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
          if (!mask.at(nx, ny) || out.at(nx, ny) != 0) continue;
          out.set(nx, ny, next_label);
          stack.push_back({nx, ny});
        }
      }
      if (info) info->push_back(ci);
    }
  }
  return out;
}

std::vector<Component> connected_components(const BinaryMask& mask, int connectivity) {
  std::vector<ComponentInfo> info;
  const InstanceMap lbl = label_components(mask, connectivity, &info);
  std::vector<Component> comps(info.size());
  for (std::size_t i = 0; i < info.size(); ++i) {
    comps[i].label = info[i].label;
    comps[i].area = info[i].area;
    comps[i].min_x = info[i].min_x;
    comps[i].min_y = info[i].min_y;
    comps[i].max_x = info[i].max_x;
    comps[i].max_y = info[i].max_y;
    comps[i].pixels.reserve(static_cast<std::size_t>(info[i].area));
  }
  for (int y = 0; y < lbl.height; ++y)
    for (int x = 0; x < lbl.width; ++x) {
      const std::int32_t l = lbl.at(x, y);
      if (l > 0) comps[static_cast<std::size_t>(l) - 1].pixels.push_back({x, y});
    }
  return comps;
}

namespace {

// next_true[i] = smallest j >= i with row[j] != 0, or width if none.
void fill_next_index(const std::uint8_t* row, int w, bool wanted, std::vector<int>& next) {
  next.resize(static_cast<std::size_t>(w) + 1);
  next[w] = w;
  for (int x = w - 1; x >= 0; --x) next[x] = ((row[x] != 0) == wanted) ? x : next[x + 1];
}

// out[x] = extremum of in[x+a .. x+b] (clipped); empty windows yield `identity`.
template <typename Less>
void sliding_extreme(const double* in, int w, int a, int b, double identity, Less better,
                     double* out) {
  std::deque<int> dq;
  int j = 0;
  for (int x = 0; x < w; ++x) {
    const int hi = x + b;
    while (j <= hi && j < w) {
      while (!dq.empty() && !better(in[dq.back()], in[j])) dq.pop_back();
      dq.push_back(j);
      ++j;
    }
    while (!dq.empty() && dq.front() < x + a) dq.pop_front();
    out[x] = dq.empty() ? identity : in[dq.front()];
  }
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
  const int w = mask.width, h = mask.height;
  BinaryMask out(w, h, false);
  std::vector<int> next_true;
  for (const auto& run : se.runs) {
    // out(x,y) |= any ink in source row y-dy over columns [x-dx_max, x-dx_min]
    const int a = -run.dx_max, b = -run.dx_min;
    for (int y = 0; y < h; ++y) {
      const int sy = y - run.dy;
      if (sy < 0 || sy >= h) continue;
      fill_next_index(mask.data.data() + mask.idx(0, sy), w, true, next_true);
      std::uint8_t* orow = out.data.data() + out.idx(0, y);
      for (int x = 0; x < w; ++x) {
        const int lo = std::max(0, x + a), hi = std::min(w - 1, x + b);
        if (lo <= hi && next_true[lo] <= hi) orow[x] = 1;
      }
    }
  }
  return out;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
  const int w = mask.width, h = mask.height;
  BinaryMask out(w, h, true);
  std::vector<int> next_false;
  for (const auto& run : se.runs) {
    // keep(x,y) &= all ink in source row y+dy over columns [x+dx_min, x+dx_max],
    // with out-of-bounds counting as background.
    const int a = run.dx_min, b = run.dx_max;
    for (int y = 0; y < h; ++y) {
      const int sy = y + run.dy;
      std::uint8_t* orow = out.data.data() + out.idx(0, y);
      if (sy < 0 || sy >= h) {
        std::fill(orow, orow + w, std::uint8_t{0});
        continue;
      }
      fill_next_index(mask.data.data() + mask.idx(0, sy), w, false, next_false);
      for (int x = 0; x < w; ++x) {
        const int lo = x + a, hi = x + b;
        if (lo < 0 || hi >= w || next_false[lo] <= hi) orow[x] = 0;
      }
    }
  }
  return out;
}

BinaryMask close(const BinaryMask& mask, const StructuringElement& se) {
  return erode(dilate(mask, se), se);
}

namespace {

enum class GrayMorphOp { Dilate, Erode };

GrayImage gray_morph(const GrayImage& img, const StructuringElement& se, GrayMorphOp op) {
  const int w = img.width, h = img.height;
  const double identity = op == GrayMorphOp::Dilate ? -std::numeric_limits<double>::infinity()
                                                    : std::numeric_limits<double>::infinity();
  GrayImage out(w, h, identity);
  std::vector<double> tmp(static_cast<std::size_t>(w));
  for (const auto& run : se.runs) {
    const int dy = op == GrayMorphOp::Dilate ? -run.dy : run.dy;
    const int a = op == GrayMorphOp::Dilate ? -run.dx_max : run.dx_min;
    const int b = op == GrayMorphOp::Dilate ? -run.dx_min : run.dx_max;
    for (int y = 0; y < h; ++y) {
      const int sy = y + dy;
      if (sy < 0 || sy >= h) continue;
      const double* irow = img.data.data() + img.idx(0, sy);
      if (op == GrayMorphOp::Dilate)
        sliding_extreme(irow, w, a, b, identity, [](double p, double q) { return p > q; },
                        tmp.data());
      else
        sliding_extreme(irow, w, a, b, identity, [](double p, double q) { return p < q; },
                        tmp.data());
      double* orow = out.data.data() + out.idx(0, y);
      if (op == GrayMorphOp::Dilate)
        for (int x = 0; x < w; ++x) orow[x] = std::max(orow[x], tmp[x]);
      else
        for (int x = 0; x < w; ++x) orow[x] = std::min(orow[x], tmp[x]);
    }
  }
  return out;
}

}  // namespace

GrayImage gray_dilate(const GrayImage& img, const StructuringElement& se) {
  return gray_morph(img, se, GrayMorphOp::Dilate);
}

GrayImage gray_erode(const GrayImage& img, const StructuringElement& se) {
  return gray_morph(img, se, GrayMorphOp::Erode);
}

GrayImage gray_open(const GrayImage& img, const StructuringElement& se) {
  return gray_dilate(gray_erode(img, se), se);
}

GrayImage top_hat(const GrayImage& img, const StructuringElement& se) {
  const GrayImage opened = gray_open(img, se);
  GrayImage out(img.width, img.height);
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = std::max(0.0, img.data[i] - opened.data[i]);
  return out;
}

GrayImage to_grayscale(const RgbImage& rgb) {
  GrayImage out(rgb.width, rgb.height);
  for (int y = 0; y < rgb.height; ++y)
    for (int x = 0; x < rgb.width; ++x) {
      const std::uint8_t* p = rgb.px(x, y);
      const double lum = 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2];
      out.at(x, y) = std::floor(lum + 0.5);
    }
  return out;
}

InstanceMap normalize_labels(const InstanceMap& m) {
  InstanceMap out(m.width, m.height);
  std::int32_t next = 0;
  const std::int32_t maxl = m.max_label();
  if (maxl <= 0) return out;
  if (static_cast<std::size_t>(maxl) <= m.labels.size() + 1024) {
    std::vector<std::int32_t> remap(static_cast<std::size_t>(maxl) + 1, 0);
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
      const std::int32_t l = m.labels[i];
      if (l <= 0) continue;
      if (remap[l] == 0) remap[l] = ++next;
      out.labels[i] = remap[l];
    }
  } else {  // sparse label ids
    std::unordered_map<std::int32_t, std::int32_t> remap;
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
      const std::int32_t l = m.labels[i];
      if (l <= 0) continue;
      auto [it, inserted] = remap.try_emplace(l, next + 1);
      if (inserted) ++next;
      out.labels[i] = it->second;
    }
  }
  return out;
}

BinaryMask to_binary(const InstanceMap& m) {
  BinaryMask out(m.width, m.height);
  for (std::size_t i = 0; i < m.labels.size(); ++i) out.data[i] = m.labels[i] > 0 ? 1 : 0;
  return out;
}

GrayImage invert(const GrayImage& img) {
  GrayImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.data.size(); ++i) out.data[i] = 255.0 - img.data[i];
  return out;
}

GrayImage mask_to_gray(const BinaryMask& m, double ink_value) {
  GrayImage out(m.width, m.height);
  for (std::size_t i = 0; i < m.data.size(); ++i) out.data[i] = m.data[i] ? ink_value : 0.0;
  return out;
}

}  // namespace lineseg
