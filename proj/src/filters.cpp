#include "lineseg/filters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace lineseg {

AnisoGaussParams AnisoGaussParams::from_elongation(double sigma_v, double eta, double phi) {
  if (sigma_v <= 0.0) throw std::invalid_argument("sigma_v must be > 0");
  if (eta < 1.0) throw std::invalid_argument("elongation factor must be >= 1");
  return {eta * sigma_v, sigma_v, phi};
}

namespace {

inline int intensity_bin(double v) {
  const long b = std::lround(v);
  return static_cast<int>(std::clamp(b, 0L, 255L));
}

std::array<std::int64_t, 256> histogram256(const GrayImage& img) {
  std::array<std::int64_t, 256> hist{};
  for (double v : img.data) ++hist[intensity_bin(v)];
  return hist;
}

}  // namespace

int otsu_threshold(const GrayImage& img) {
  if (img.data.empty()) throw std::invalid_argument("otsu_threshold on empty image");
  const auto hist = histogram256(img);

  std::int64_t total = 0, total_sum = 0;
  for (int i = 0; i < 256; ++i) {
    total += hist[i];
    total_sum += static_cast<std::int64_t>(i) * hist[i];
  }

  // Maximizing between-class variance is equivalent to maximizing
  // S0^2/n0 + S1^2/n1 (total sum of squares is constant in t). Comparing the
  // exact rational (S0^2 n1 + S1^2 n0) / (n0 n1) in 128-bit integers makes
  // the argmax reproducible even for tied or nearly tied splits.
  using i128 = __int128;
  const bool exact = total <= 2'000'000;

  int best = -1;
  i128 best_num = 0, best_den = 1;
  long double best_f = -1.0L;
  std::int64_t n0 = 0, s0 = 0;
  for (int t = 0; t < 256; ++t) {
    n0 += hist[t];
    s0 += static_cast<std::int64_t>(t) * hist[t];
    const std::int64_t n1 = total - n0, s1 = total_sum - s0;
    if (n0 == 0 || n1 == 0) continue;
    if (exact) {
      const i128 num = static_cast<i128>(s0) * s0 * n1 + static_cast<i128>(s1) * s1 * n0;
      const i128 den = static_cast<i128>(n0) * n1;
      if (best < 0 || num * best_den > best_num * den) {
        best = t;
        best_num = num;
        best_den = den;
      }
    } else {
      const long double f = static_cast<long double>(s0) * s0 / n0 +
                            static_cast<long double>(s1) * s1 / n1;
      if (best < 0 || f > best_f) {
        best = t;
        best_f = f;
      }
    }
  }
  if (best < 0) {
    // Degenerate single-bin histogram: return that intensity.
    for (int t = 0; t < 256; ++t)
      if (hist[t] > 0) return t;
    return 0;
  }
  return best;
}

namespace {

BinaryMask threshold_mask(const GrayImage& img, bool bright_side) {
  BinaryMask out(img.width, img.height, false);
  const auto hist = histogram256(img);
  int nonzero_bins = 0;
  for (int i = 0; i < 256; ++i) nonzero_bins += hist[i] > 0 ? 1 : 0;
  if (nonzero_bins <= 1) return out;  // constant image: nothing to separate
  const int t = otsu_threshold(img);
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const int b = intensity_bin(img.data[i]);
    out.data[i] = (bright_side ? b > t : b <= t) ? 1 : 0;
  }
  return out;
}

}  // namespace

BinaryMask otsu_binarize(const GrayImage& img) { return threshold_mask(img, false); }

BinaryMask otsu_binarize_bright(const GrayImage& img) { return threshold_mask(img, true); }

BinaryMask sauvola_binarize(const GrayImage& img, int window, double k, double R) {
  if (window < 3 || window % 2 == 0) throw std::invalid_argument("window must be odd and >= 3");
  if (k <= 0.0 || k >= 1.0) throw std::invalid_argument("k must be in (0, 1)");
  if (R <= 0.0) throw std::invalid_argument("R must be > 0");

  const int w = img.width, h = img.height, r = window / 2;
  const int pw = w + 2 * r, ph = h + 2 * r;

  // Replicate-padded integral images of v and v^2.
  std::vector<double> sum((pw + 1) * (ph + 1), 0.0), sq((pw + 1) * (ph + 1), 0.0);
  auto clampx = [&](int x) { return std::clamp(x, 0, w - 1); };
  auto clampy = [&](int y) { return std::clamp(y, 0, h - 1); };
  for (int y = 0; y < ph; ++y) {
    double row_s = 0.0, row_q = 0.0;
    for (int x = 0; x < pw; ++x) {
      const double v = img.at(clampx(x - r), clampy(y - r));
      row_s += v;
      row_q += v * v;
      sum[(y + 1) * (pw + 1) + (x + 1)] = sum[y * (pw + 1) + (x + 1)] + row_s;
      sq[(y + 1) * (pw + 1) + (x + 1)] = sq[y * (pw + 1) + (x + 1)] + row_q;
    }
  }

  const double n = static_cast<double>(window) * window;
  BinaryMask out(w, h, false);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int x0 = x, y0 = y, x1 = x + 2 * r + 1, y1 = y + 2 * r + 1;  // padded coords
      auto rect = [&](const std::vector<double>& a) {
        return a[y1 * (pw + 1) + x1] - a[y0 * (pw + 1) + x1] - a[y1 * (pw + 1) + x0] +
               a[y0 * (pw + 1) + x0];
      };
      const double mean = rect(sum) / n;
      const double var = std::max(0.0, rect(sq) / n - mean * mean);
      const double thresh = mean * (1.0 + k * (std::sqrt(var) / R - 1.0));
      if (img.at(x, y) < thresh) out.set(x, y, true);
    }
  return out;
}

double total_variation(const GrayImage& img) {
  double tv = 0.0;
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const double gx = x + 1 < img.width ? img.at(x + 1, y) - img.at(x, y) : 0.0;
      const double gy = y + 1 < img.height ? img.at(x, y + 1) - img.at(x, y) : 0.0;
      tv += std::sqrt(gx * gx + gy * gy);
    }
  return tv;
}

GrayImage tv_denoise(const GrayImage& img, double weight, int max_iter, double tol) {
  if (weight <= 0.0) throw std::invalid_argument("tv weight must be > 0");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
  const int w = img.width, h = img.height;
  const std::size_t n = img.data.size();

  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = img.data[i] / 255.0;

  std::vector<double> px(n, 0.0), py(n, 0.0), div(n, 0.0), u(g), u_prev(n, 0.0);
  const double tau = 0.125;
  const double lam = weight;

  for (int iter = 0; iter < max_iter; ++iter) {
    // div p with the adjoint of forward differences
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        double d = px[i] + py[i];
        if (x > 0) d -= px[i - 1];
        if (y > 0) d -= py[i - w];
        div[i] = d;
      }
    u_prev.swap(u);
    for (std::size_t i = 0; i < n; ++i) u[i] = g[i] - lam * div[i];

    // p update: gradient ascent on the dual, reprojected onto |p| <= 1
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        const double gx = x + 1 < w ? (div[i + 1] - g[i + 1] / lam) - (div[i] - g[i] / lam) : 0.0;
        const double gy = y + 1 < h ? (div[i + w] - g[i + w] / lam) - (div[i] - g[i] / lam) : 0.0;
        const double mag = std::sqrt(gx * gx + gy * gy);
        const double denom = 1.0 + tau * mag;
        px[i] = (px[i] + tau * gx) / denom;
        py[i] = (py[i] + tau * gy) / denom;
      }

    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(u[i] - u_prev[i]));
    if (iter > 0 && change < tol) break;
  }

  GrayImage out(w, h);
  for (std::size_t i = 0; i < n; ++i) out.data[i] = std::clamp(u[i], 0.0, 1.0) * 255.0;
  return out;
}

namespace {

// The truncated oriented kernel as per-dy horizontal weight runs.
struct OrientedKernel {
  struct Row {
    int dy;
    int dx_min;
    std::vector<double> weights;  // for dx_min .. dx_min + size - 1
  };
  std::vector<Row> rows;
};

OrientedKernel build_kernel(const AnisoGaussParams& p) {
  if (p.sigma_u <= 0.0 || p.sigma_v <= 0.0)
    throw std::invalid_argument("sigma_u and sigma_v must be > 0");
  const double c = std::cos(p.phi), s = std::sin(p.phi);
  const double su = p.sigma_u, sv = p.sigma_v;
  const int hx = static_cast<int>(std::ceil(3.0 * (su * std::abs(c) + sv * std::abs(s)))) + 1;
  const int hy = static_cast<int>(std::ceil(3.0 * (su * std::abs(s) + sv * std::abs(c)))) + 1;
  // Inclusion guard keeps boundary cells stable under rotated arithmetic.
  const double limit = 9.0 * (1.0 + 1e-12);

  OrientedKernel k;
  double total = 0.0;
  for (int dy = -hy; dy <= hy; ++dy) {
    int dx_min = 0;
    std::vector<double> ws;
    for (int dx = -hx; dx <= hx; ++dx) {
      const double u = dx * c + dy * s;
      const double v = -dx * s + dy * c;
      const double m = (u / su) * (u / su) + (v / sv) * (v / sv);
      if (m <= limit) {
        if (ws.empty()) dx_min = dx;
        ws.push_back(std::exp(-0.5 * m));
      } else if (!ws.empty()) {
        break;  // rows of the 3-sigma ellipse are contiguous
      }
    }
    if (ws.empty()) continue;
    for (double wv : ws) total += wv;
    k.rows.push_back({dy, dx_min, std::move(ws)});
  }
  for (auto& row : k.rows)
    for (double& wv : row.weights) wv /= total;
  return k;
}

}  // namespace

GrayImage anisotropic_gaussian(const GrayImage& img, const AnisoGaussParams& p) {
  const OrientedKernel kernel = build_kernel(p);
  const int w = img.width, h = img.height;
  GrayImage out(w, h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (const auto& row : kernel.rows) {
      const int sy = std::clamp(y + row.dy, 0, h - 1);
      const double* irow = img.data.data() + img.idx(0, sy);
      double* orow = out.data.data() + out.idx(0, y);
      const int m = static_cast<int>(row.weights.size());
      for (int x = 0; x < w; ++x) {
        double acc = 0.0;
        for (int j = 0; j < m; ++j) {
          const int sx = std::clamp(x + row.dx_min + j, 0, w - 1);
          acc += row.weights[j] * irow[sx];
        }
        orow[x] += acc;
      }
    }
  }
  return out;
}

GrayImage elongated_blur(const GrayImage& img, int kw, int kh) {
  if (kh < 1 || kw <= kh) throw std::invalid_argument("requires kw > kh >= 1");
  const int w = img.width, h = img.height;
  const int lx = -(kw - 1) / 2, hx = kw / 2;
  const int ly = -(kh - 1) / 2, hy = kh / 2;

  GrayImage horiz(w, h);
  for (int y = 0; y < h; ++y) {
    const double* irow = img.data.data() + img.idx(0, y);
    double* orow = horiz.data.data() + horiz.idx(0, y);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dx = lx; dx <= hx; ++dx) acc += irow[std::clamp(x + dx, 0, w - 1)];
      orow[x] = acc;
    }
  }
  GrayImage out(w, h);
  const double norm = 1.0 / (static_cast<double>(kw) * kh);
  for (int y = 0; y < h; ++y) {
    double* orow = out.data.data() + out.idx(0, y);
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = ly; dy <= hy; ++dy) acc += horiz.at(x, std::clamp(y + dy, 0, h - 1));
      orow[x] = acc * norm;
    }
  }
  return out;
}

}  // namespace lineseg
