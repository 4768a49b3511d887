#include "lineseg/gpi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "lineseg/error.hpp"

namespace lineseg {

GrayImage gpi_preprocess(const GrayImage& img, const GpiConfig& cfg) {
  if (cfg.tophat_radius < 1) throw std::invalid_argument("tophat radius must be >= 1");
  // Invert so the dark strokes become the bright structures the white
  // top-hat isolates.
  const GrayImage denoised = tv_denoise(invert(img), cfg.tv_weight, cfg.tv_max_iter, cfg.tv_tol);
  return top_hat(denoised, StructuringElement::circle(cfg.tophat_radius));
}

std::vector<ColumnBand> detect_columns(const GrayImage& blurred, const GpiConfig& cfg) {
  const int w = blurred.width, h = blurred.height;
  std::vector<double> profile(w, 0.0);
  double maxp = 0.0;
  for (int x = 0; x < w; ++x) {
    double s = 0.0;
    for (int y = 0; y < h; ++y) s += blurred.at(x, y);
    profile[x] = s;
    maxp = std::max(maxp, s);
  }
  std::vector<ColumnBand> bands;
  if (maxp <= 0.0) return bands;
  const double cut = cfg.valley_threshold * maxp;
  int start = -1;
  for (int x = 0; x <= w; ++x) {
    const bool on = x < w && profile[x] > cut;
    if (on && start < 0) start = x;
    if (!on && start >= 0) {
      bands.push_back({start, x});
      start = -1;
    }
  }
  return bands;
}

namespace {

// Solve the 3x3 system A coef = rhs by Gaussian elimination with partial
// pivoting. Returns false when singular.
bool solve3(std::array<std::array<double, 3>, 3> A, std::array<double, 3> rhs,
            std::array<double, 3>& coef) {
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-12) return false;
    std::swap(A[col], A[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = A[r][col] / A[col][col];
      for (int c = col; c < 3; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  for (int i = 0; i < 3; ++i) coef[i] = rhs[i] / A[i][i];
  return true;
}

}  // namespace

std::vector<BlobCurve> fit_blob_curves(const std::vector<Component>& blobs) {
  std::vector<BlobCurve> curves;
  curves.reserve(blobs.size());
  for (const Component& blob : blobs) {
    BlobCurve curve;
    curve.source_label = blob.label;
    curve.x_start = blob.min_x;
    curve.x_end = blob.max_x;

    // Column midpoints: mean y of the blob pixels per x.
    const int span = blob.max_x - blob.min_x + 1;
    std::vector<double> ysum(span, 0.0);
    std::vector<int> ycount(span, 0);
    double cy = 0.0;
    for (const Point& p : blob.pixels) {
      ysum[p.x - blob.min_x] += p.y;
      ycount[p.x - blob.min_x] += 1;
      cy += p.y;
    }
    cy /= static_cast<double>(blob.pixels.size());

    std::vector<std::pair<double, double>> pts;  // (x, midpoint)
    for (int i = 0; i < span; ++i)
      if (ycount[i] > 0) pts.emplace_back(blob.min_x + i, ysum[i] / ycount[i]);

    if (pts.size() < 3) {
      // Degenerate blob: horizontal line through the centroid.
      curve.a = curve.b = 0.0;
      curve.c = cy;
      curves.push_back(curve);
      continue;
    }

    // Least squares on x shifted to the mean for conditioning.
    double xbar = 0.0;
    for (const auto& [x, m] : pts) xbar += x;
    xbar /= static_cast<double>(pts.size());
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0, s4 = 0, m0 = 0, m1 = 0, m2 = 0;
    for (const auto& [x, m] : pts) {
      const double t = x - xbar, t2 = t * t;
      s0 += 1;
      s1 += t;
      s2 += t2;
      s3 += t2 * t;
      s4 += t2 * t2;
      m0 += m;
      m1 += m * t;
      m2 += m * t2;
    }
    std::array<double, 3> coef{};  // c', b', a' in shifted coordinates
    const bool ok = solve3({{{s0, s1, s2}, {s1, s2, s3}, {s2, s3, s4}}}, {m0, m1, m2}, coef);
    if (!ok) {
      curve.a = curve.b = 0.0;
      curve.c = cy;
    } else {
      const double cs = coef[0], bs = coef[1], as = coef[2];
      curve.a = as;
      curve.b = bs - 2.0 * as * xbar;
      curve.c = cs - bs * xbar + as * xbar * xbar;
    }
    curves.push_back(curve);
  }
  return curves;
}

BinaryMask build_initial_mask(const std::vector<BlobCurve>& curves,
                              const std::vector<ColumnBand>& bands, const GpiConfig& cfg,
                              int width, int height) {
  const int margin = cfg.extrapolation_margin > 0 ? cfg.extrapolation_margin : 2 * cfg.blur_kw;
  BinaryMask lines(width, height, false);
  for (const BlobCurve& curve : curves) {
    int lo = curve.x_start - margin, hi = curve.x_end + margin;
    int band = curve.band;
    if (band < 0) {  // locate the band containing the curve
      const int mid = (curve.x_start + curve.x_end) / 2;
      for (std::size_t b = 0; b < bands.size(); ++b)
        if (mid >= bands[b].x_start && mid < bands[b].x_end) {
          band = static_cast<int>(b);
          break;
        }
    }
    if (band >= 0 && band < static_cast<int>(bands.size())) {
      lo = std::max(lo, bands[band].x_start);
      hi = std::min(hi, bands[band].x_end - 1);
    }
    lo = std::max(lo, 0);
    hi = std::min(hi, width - 1);
    for (int x = lo; x <= hi; ++x) {
      const double xf = x;
      const long y = std::lround(curve.a * xf * xf + curve.b * xf + curve.c);
      if (y >= 0 && y < height) lines.set(x, static_cast<int>(y), true);
    }
  }
  if (cfg.ellipse_w < 1 || cfg.ellipse_h < 1)
    throw std::invalid_argument("initial mask requires a concrete ellipse kernel");
  return dilate(lines, StructuringElement::ellipse(cfg.ellipse_w, cfg.ellipse_h));
}

std::int64_t compute_area_threshold(const std::vector<std::int64_t>& areas, double factor,
                                    double percentile) {
  if (areas.empty()) throw PipelineError("area calibration requires at least one component");
  if (factor < 1.0 || percentile <= 0.0 || percentile > 1.0)
    throw std::invalid_argument("invalid area threshold parameters");
  std::vector<std::int64_t> sorted(areas);
  std::sort(sorted.begin(), sorted.end());
  // Nearest-rank percentile: the ceil(p*n)-th smallest (1-based).
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(percentile * static_cast<double>(sorted.size())));
  const std::int64_t p = sorted[std::max<std::size_t>(rank, 1) - 1];
  return std::llround(factor * static_cast<double>(p));
}

std::int64_t compute_area_threshold(const std::vector<Component>& train_components,
                                    const GpiConfig& cfg) {
  std::vector<std::int64_t> areas;
  areas.reserve(train_components.size());
  for (const Component& c : train_components) areas.push_back(c.area);
  return compute_area_threshold(areas, cfg.area_threshold_factor, cfg.area_percentile);
}

InstanceMap refine_components(const BinaryMask& initial, const GrayImage& contrast,
                              std::int64_t area_thresh, int connectivity) {
  if (initial.width != contrast.width || initial.height != contrast.height)
    throw std::invalid_argument("initial/contrast size mismatch");
  if (area_thresh <= 0) throw std::invalid_argument("area threshold must come from calibration");

  const InstanceMap regions = label_components(initial, connectivity);
  const std::int32_t n_regions = regions.max_label();
  const std::vector<Component> comps =
      connected_components(otsu_binarize_bright(contrast), connectivity);

  InstanceMap out(initial.width, initial.height);
  std::vector<std::int64_t> overlap(static_cast<std::size_t>(n_regions) + 1, 0);
  for (const Component& comp : comps) {
    if (comp.area > area_thresh) continue;
    std::fill(overlap.begin(), overlap.end(), 0);
    for (const Point& p : comp.pixels) {
      const std::int32_t r = regions.at(p.x, p.y);
      if (r > 0) ++overlap[r];
    }
    std::int32_t best = 0;
    std::int64_t best_count = 0;
    for (std::int32_t r = 1; r <= n_regions; ++r)
      if (overlap[r] > best_count) {  // strict: ties keep the lower label
        best_count = overlap[r];
        best = r;
      }
    if (best == 0) continue;  // no intersection with any region
    for (const Point& p : comp.pixels) out.set(p.x, p.y, best);
  }
  return out;
}

GpiStages run_gpi_stages(const GrayImage& img, const GpiConfig& cfg, std::int64_t area_thresh) {
  GpiStages st;
  st.contrast = gpi_preprocess(img, cfg);
  st.blurred = elongated_blur(st.contrast, cfg.blur_kw, cfg.blur_kh);
  st.bands = detect_columns(st.blurred, cfg);

  // Band-independent Otsu on the blurred image; bright side = line cores.
  st.blobs = BinaryMask(img.width, img.height, false);
  for (const ColumnBand& band : st.bands) {
    GrayImage sub(band.x_end - band.x_start, img.height);
    for (int y = 0; y < img.height; ++y)
      for (int x = band.x_start; x < band.x_end; ++x)
        sub.at(x - band.x_start, y) = st.blurred.at(x, y);
    const BinaryMask sub_blobs = otsu_binarize_bright(sub);
    for (int y = 0; y < img.height; ++y)
      for (int x = band.x_start; x < band.x_end; ++x)
        if (sub_blobs.at(x - band.x_start, y)) st.blobs.set(x, y, true);
  }

  std::vector<Component> comps = connected_components(st.blobs, cfg.connectivity);
  st.curves = fit_blob_curves(comps);
  for (BlobCurve& curve : st.curves)
    for (std::size_t b = 0; b < st.bands.size(); ++b)
      if (curve.x_start >= st.bands[b].x_start && curve.x_start < st.bands[b].x_end) {
        curve.band = static_cast<int>(b);
        break;
      }

  GpiConfig concrete = cfg;
  if (concrete.ellipse_w < 1 || concrete.ellipse_h < 1) {
    // Size the kernel from the median blob height: tall enough to absorb
    // fragmentation, flat enough to keep neighboring lines apart.
    std::vector<int> heights;
    for (const Component& c : comps) heights.push_back(c.bbox_height());
    int med = 9;
    if (!heights.empty()) {
      std::nth_element(heights.begin(), heights.begin() + heights.size() / 2, heights.end());
      med = std::max(3, heights[heights.size() / 2]);
    }
    concrete.ellipse_h = med % 2 == 0 ? med + 1 : med;
    concrete.ellipse_w = 3 * concrete.ellipse_h;
  }
  st.initial = build_initial_mask(st.curves, st.bands, concrete, img.width, img.height);
  st.result = normalize_labels(
      refine_components(st.initial, st.contrast, area_thresh, cfg.connectivity));
  return st;
}

InstanceMap run_gpi(const GrayImage& img, const GpiConfig& cfg, std::int64_t area_thresh) {
  return run_gpi_stages(img, cfg, area_thresh).result;
}

}  // namespace lineseg
