#include "lineseg/tauch.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "lineseg/error.hpp"

namespace lineseg {

CharHeightStats estimate_char_height(const BinaryMask& mask, double min_height,
                                     double max_height, int connectivity) {
  if (min_height > max_height) throw std::invalid_argument("invalid height bounds");
  std::vector<ComponentInfo> info;
  label_components(mask, connectivity, &info);
  double sum = 0.0;
  int count = 0;
  for (const ComponentInfo& c : info) {
    const double h = c.bbox_height();
    if (h >= min_height && h <= max_height) {
      sum += h;
      ++count;
    }
  }
  if (count == 0) throw PipelineError("no component height inside the plausible interval");
  return {sum / count, min_height, max_height, count};
}

namespace {

int make_odd(int n) { return n % 2 == 0 ? n + 1 : n; }

std::pair<double, double> height_bounds(const TauchConfig& cfg, int image_height) {
  if (cfg.max_height_px > 0.0) return {cfg.min_height_px, cfg.max_height_px};
  return {cfg.min_height_frac * image_height, cfg.max_height_frac * image_height};
}

CharHeightStats stats_or_fallback(const BinaryMask& dilated, const TauchConfig& cfg) {
  const auto [lo, hi] = height_bounds(cfg, dilated.height);
  try {
    return estimate_char_height(dilated, lo, hi, cfg.connectivity);
  } catch (const PipelineError&) {
    // Unusable page: fall back to the interval midpoint.
    return {(lo + hi) / 2.0, lo, hi, 0};
  }
}

// Stages through the blob mask; the rest of the pipeline builds on these.
void fill_detection_stages(TauchStages& st, const GrayImage& img, const TauchConfig& cfg) {
  st.ink = otsu_binarize(img);
  if (st.ink.empty_ink()) {
    st.dilated = st.ink;
    st.response = GrayImage(img.width, img.height, 0.0);
    st.blobs = BinaryMask(img.width, img.height, false);
    return;
  }
  st.dilated = dilate(st.ink, StructuringElement::rectangle(make_odd(cfg.dilation_w),
                                                            make_odd(cfg.dilation_h)));
  st.stats = stats_or_fallback(st.dilated, cfg);

  const double sigma_v = std::max(0.5, cfg.sigma_factor * st.stats.mean_height);
  const auto params = AnisoGaussParams::from_elongation(sigma_v, cfg.eta, 0.0);
  st.response = anisotropic_gaussian(mask_to_gray(st.dilated, 255.0), params);

  if (cfg.blob_threshold_mode == TauchConfig::BlobThreshold::OtsuOnResponse) {
    st.blobs = otsu_binarize_bright(st.response);
  } else {
    st.blobs = BinaryMask(img.width, img.height, false);
    for (std::size_t i = 0; i < st.response.data.size(); ++i)
      st.blobs.data[i] = st.response.data[i] > cfg.blob_threshold ? 1 : 0;
  }
}

}  // namespace

BinaryMask detect_line_blobs(const GrayImage& img, const TauchConfig& cfg) {
  TauchStages st;
  fill_detection_stages(st, img, cfg);
  return st.blobs;
}

IntRaster vertical_distance_map(const BinaryMask& mask) {
  const int w = mask.width, h = mask.height;
  IntRaster out(w, h, 0);
  std::vector<int> up(h), down(h);
  for (int x = 0; x < w; ++x) {
    // distance to the nearest ink above; the border acts as ink at y = -1
    int last = -1;
    for (int y = 0; y < h; ++y) {
      if (mask.at(x, y)) last = y;
      up[y] = y - last;  // border: y - (-1) = y + 1
    }
    last = h;
    for (int y = h - 1; y >= 0; --y) {
      if (mask.at(x, y)) last = y;
      down[y] = last - y;
    }
    for (int y = 0; y < h; ++y)
      if (!mask.at(x, y)) out.set(x, y, up[y] + down[y]);
  }
  return out;
}

BinaryMask separator_mask(const IntRaster& dmap, int threshold) {
  if (threshold <= 0) throw std::invalid_argument("separator threshold must be > 0");
  BinaryMask out(dmap.width, dmap.height, false);
  for (std::size_t i = 0; i < dmap.data.size(); ++i) out.data[i] = dmap.data[i] >= threshold;
  return out;
}

BinaryMask split_blobs(const BinaryMask& blobs, const BinaryMask& separator) {
  if (blobs.width != separator.width || blobs.height != separator.height)
    throw std::invalid_argument("blob/separator size mismatch");
  BinaryMask out(blobs.width, blobs.height, false);
  for (std::size_t i = 0; i < blobs.data.size(); ++i)
    out.data[i] = blobs.data[i] && !separator.data[i];
  return out;
}

BinaryMask extract_text_region(const BinaryMask& blobs, const CharHeightStats& stats,
                               const BinaryMask& ink, double c) {
  if (blobs.width != ink.width || blobs.height != ink.height)
    throw std::invalid_argument("blob/ink size mismatch");
  const int se_h = make_odd(std::max(1, static_cast<int>(std::lround(c * stats.mean_height))));
  const BinaryMask tall = dilate(blobs, StructuringElement::rectangle(1, se_h));
  BinaryMask out(ink.width, ink.height, false);
  for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = tall.data[i] && ink.data[i];
  return out;
}

InstanceMap watershed_segment(const InstanceMap& markers, const BinaryMask& region,
                              const GrayImage& relief) {
  if (markers.width != region.width || markers.height != region.height ||
      relief.width != region.width || relief.height != region.height)
    throw std::invalid_argument("watershed input size mismatch");

  const int w = region.width, h = region.height;
  InstanceMap out(w, h);

  struct Entry {
    double priority;
    std::uint64_t seq;
    int x, y;
  };
  auto later = [](const Entry& a, const Entry& b) {
    return std::tie(a.priority, a.seq) > std::tie(b.priority, b.seq);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(later)> heap(later);

  std::uint64_t seq = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const std::int32_t l = markers.at(x, y);
      if (l < 0) throw std::invalid_argument("negative marker label");
      if (l == 0) continue;
      if (!region.at(x, y)) throw std::invalid_argument("marker pixel outside the region");
      out.set(x, y, l);
      heap.push({relief.at(x, y), seq++, x, y});
    }

  static constexpr int kDx[4] = {0, -1, 1, 0};
  static constexpr int kDy[4] = {-1, 0, 0, 1};
  while (!heap.empty()) {
    const Entry e = heap.top();
    heap.pop();
    const std::int32_t label = out.at(e.x, e.y);
    for (int k = 0; k < 4; ++k) {
      const int nx = e.x + kDx[k], ny = e.y + kDy[k];
      if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
      if (!region.at(nx, ny) || out.at(nx, ny) != 0) continue;
      out.set(nx, ny, label);
      heap.push({relief.at(nx, ny), seq++, nx, ny});
    }
  }
  return out;
}

TauchStages run_tauch_stages(const GrayImage& img, const TauchConfig& cfg) {
  TauchStages st;
  fill_detection_stages(st, img, cfg);
  const int w = img.width, h = img.height;
  if (st.ink.empty_ink()) {
    st.distance = IntRaster(w, h, 0);
    st.separator = BinaryMask(w, h, false);
    st.split = st.blobs;
    st.region = BinaryMask(w, h, false);
    st.markers = InstanceMap(w, h);
    st.result = InstanceMap(w, h);
    return st;
  }

  st.distance = vertical_distance_map(st.dilated);
  const int sep_thresh =
      std::max(1, static_cast<int>(std::lround(cfg.separator_factor * st.stats.mean_height)));
  st.separator = separator_mask(st.distance, sep_thresh);
  st.split = split_blobs(st.blobs, st.separator);
  st.region = extract_text_region(st.split, st.stats, st.ink, cfg.vertical_dilation_factor);

  // Markers: split-blob components, clipped to the region so every marker
  // pixel is floodable. Components that never touch ink contribute nothing.
  const InstanceMap split_labels = label_components(st.split, cfg.connectivity);
  st.markers = InstanceMap(w, h);
  for (std::size_t i = 0; i < st.markers.labels.size(); ++i)
    if (st.region.data[i]) st.markers.labels[i] = split_labels.labels[i];

  GrayImage relief(w, h);
  for (std::size_t i = 0; i < relief.data.size(); ++i)
    relief.data[i] = 255.0 - st.response.data[i];  // line cores become basins

  st.result = normalize_labels(watershed_segment(st.markers, st.region, relief));
  return st;
}

InstanceMap run_tauch(const GrayImage& img, const TauchConfig& cfg) {
  return run_tauch_stages(img, cfg).result;
}

}  // namespace lineseg
