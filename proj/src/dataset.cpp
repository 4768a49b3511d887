#include "lineseg/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "lineseg/error.hpp"

namespace lineseg {

namespace {

std::array<std::uint8_t, 3> hsv_to_rgb(double h, double s, double v) {
  const double hh = (h - std::floor(h)) * 6.0;
  const int sector = static_cast<int>(hh) % 6;
  const double f = hh - std::floor(hh);
  const double p = v * (1.0 - s);
  const double q = v * (1.0 - s * f);
  const double t = v * (1.0 - s * (1.0 - f));
  double r, g, b;
  switch (sector) {
    case 0: r = v; g = t; b = p; break;
    case 1: r = q; g = v; b = p; break;
    case 2: r = p; g = v; b = t; break;
    case 3: r = p; g = q; b = v; break;
    case 4: r = t; g = p; b = v; break;
    default: r = v; g = p; b = q; break;
  }
  auto q8 = [](double x) { return static_cast<std::uint8_t>(std::lround(x * 255.0)); };
  return {q8(r), q8(g), q8(b)};
}

constexpr double kGolden = 0.61803398874989484820;

std::uint32_t pack(const std::array<std::uint8_t, 3>& c) {
  return (static_cast<std::uint32_t>(c[0]) << 16) | (static_cast<std::uint32_t>(c[1]) << 8) |
         c[2];
}

// Candidate colors for one label: the golden-ratio hue first, then hue,
// value and saturation perturbations until the color is new and non-black.
std::array<std::uint8_t, 3> candidate(std::int32_t label, int attempt) {
  const double h = label * kGolden + attempt * 0.1237;
  const double v = 1.0 - 0.22 * ((attempt / 3) % 3);
  const double s = 1.0 - 0.35 * (attempt % 3 == 2 ? 1 : 0);
  return hsv_to_rgb(h, std::max(0.3, s), std::max(0.34, v));
}

// Colors for labels 1..max_label; injective by construction.
std::vector<std::array<std::uint8_t, 3>> build_palette(std::int32_t max_label) {
  std::vector<std::array<std::uint8_t, 3>> colors(static_cast<std::size_t>(max_label) + 1,
                                                  {0, 0, 0});
  std::unordered_set<std::uint32_t> used;
  used.insert(0);  // black is the background
  for (std::int32_t k = 1; k <= max_label; ++k) {
    for (int attempt = 0;; ++attempt) {
      const auto c = candidate(k, attempt);
      if (used.insert(pack(c)).second) {
        colors[k] = c;
        break;
      }
    }
  }
  return colors;
}

}  // namespace

std::array<std::uint8_t, 3> instance_color(std::int32_t label) {
  if (label <= 0) return {0, 0, 0};
  return build_palette(label)[label];
}

std::vector<std::uint8_t> encode_instance_png(const InstanceMap& m) {
  const auto palette = build_palette(m.max_label());
  PngImage img;
  img.width = m.width;
  img.height = m.height;
  img.channels = 3;
  img.data.resize(static_cast<std::size_t>(m.width) * m.height * 3);
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    const auto& c = palette[m.labels[i] < 0 ? 0 : m.labels[i]];
    img.data[3 * i] = c[0];
    img.data[3 * i + 1] = c[1];
    img.data[3 * i + 2] = c[2];
  }
  return encode_png(img);
}

InstanceMap decode_instance_png(const std::vector<std::uint8_t>& bytes) {
  const PngImage img = decode_png(bytes);
  InstanceMap m(img.width, img.height);
  std::unordered_map<std::uint32_t, std::int32_t> labels;
  std::int32_t next = 0;
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t color;
    if (img.channels == 3)
      color = pack({img.data[3 * i], img.data[3 * i + 1], img.data[3 * i + 2]});
    else
      color = pack({img.data[i], img.data[i], img.data[i]});
    if (color == 0) continue;
    auto [it, inserted] = labels.try_emplace(color, next + 1);
    if (inserted) ++next;
    m.labels[i] = it->second;
  }
  return m;
}

BinaryMask decode_semantic_png(const std::vector<std::uint8_t>& bytes) {
  const PngImage img = decode_png(bytes);
  BinaryMask m(img.width, img.height);
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  for (std::size_t i = 0; i < n; ++i) {
    if (img.channels == 3)
      m.data[i] = (img.data[3 * i] | img.data[3 * i + 1] | img.data[3 * i + 2]) != 0;
    else
      m.data[i] = img.data[i] != 0;
  }
  return m;
}

std::vector<std::uint8_t> encode_gray_png(const GrayImage& img) {
  PngImage png;
  png.width = img.width;
  png.height = img.height;
  png.channels = 1;
  png.data.resize(img.data.size());
  for (std::size_t i = 0; i < img.data.size(); ++i) {
    const long v = std::lround(img.data[i]);
    png.data[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
  }
  return encode_png(png);
}

GrayImage decode_gray_png(const std::vector<std::uint8_t>& bytes) {
  const PngImage img = decode_png(bytes);
  if (img.channels == 1) {
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < out.data.size(); ++i) out.data[i] = img.data[i];
    return out;
  }
  RgbImage rgb;
  rgb.width = img.width;
  rgb.height = img.height;
  rgb.data = img.data;
  return to_grayscale(rgb);
}

const SplitEntry* DatasetLayout::find(const std::string& manuscript,
                                      const std::string& split) const {
  for (const ManuscriptEntry& m : manuscripts) {
    if (m.name != manuscript) continue;
    for (const SplitEntry& s : m.splits)
      if (s.name == split) return &s;
  }
  return nullptr;
}

namespace {

std::vector<std::filesystem::path> sorted_pngs(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".png")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

DatasetLayout scan_dataset(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::exists(root) || !fs::is_directory(root))
    throw DataError("dataset root does not exist: " + root.string());

  DatasetLayout layout;
  layout.root = root;
  std::vector<fs::path> manuscript_dirs;
  for (const auto& entry : fs::directory_iterator(root))
    if (entry.is_directory()) manuscript_dirs.push_back(entry.path());
  std::sort(manuscript_dirs.begin(), manuscript_dirs.end());

  for (const fs::path& mdir : manuscript_dirs) {
    ManuscriptEntry m;
    m.name = mdir.filename().string();
    std::vector<fs::path> split_dirs;
    for (const auto& entry : fs::directory_iterator(mdir))
      if (entry.is_directory()) split_dirs.push_back(entry.path());
    std::sort(split_dirs.begin(), split_dirs.end());

    for (const fs::path& sdir : split_dirs) {
      SplitEntry s;
      s.name = sdir.filename().string();
      const fs::path img_dir = sdir / "img";
      const fs::path gt_dir = sdir / "gt";
      if (!fs::is_directory(img_dir)) continue;
      const bool annotated = fs::is_directory(gt_dir);

      std::unordered_set<std::string> gt_stems;
      if (annotated)
        for (const fs::path& g : sorted_pngs(gt_dir)) gt_stems.insert(g.stem().string());

      for (const fs::path& img : sorted_pngs(img_dir)) {
        PagePair pair;
        pair.stem = img.stem().string();
        pair.image = img;
        if (annotated) {
          const fs::path gt = gt_dir / img.filename();
          if (!fs::exists(gt))
            throw DataError("missing ground truth for " + img.string());
          int iw, ih, gw, gh;
          png_dimensions(read_file(img), iw, ih);
          png_dimensions(read_file(gt), gw, gh);
          if (iw != gw || ih != gh)
            throw DataError("image/ground-truth size mismatch for " + img.string());
          pair.gt = gt;
          pair.has_gt = true;
          gt_stems.erase(pair.stem);
        }
        s.pages.push_back(std::move(pair));
      }
      if (annotated && !gt_stems.empty())
        throw DataError("ground truth without matching image: " +
                        (gt_dir / (*gt_stems.begin() + ".png")).string());
      std::sort(s.pages.begin(), s.pages.end(),
                [](const PagePair& a, const PagePair& b) { return a.stem < b.stem; });
      m.splits.push_back(std::move(s));
    }
    if (!m.splits.empty()) layout.manuscripts.push_back(std::move(m));
  }
  return layout;
}

namespace {

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void append_system_json(std::string& out, const SystemReport& sys, const std::string& indent) {
  out += indent + "{\n";
  out += indent + "  \"system\": \"" + json_escape(sys.system) + "\",\n";
  out += indent + "  \"overall_liu\": " + fmt6(sys.overall_liu) + ",\n";
  out += indent + "  \"manuscripts\": [\n";
  for (std::size_t mi = 0; mi < sys.manuscripts.size(); ++mi) {
    const ManuscriptReport& m = sys.manuscripts[mi];
    out += indent + "    {\n";
    out += indent + "      \"manuscript\": \"" + json_escape(m.name) + "\",\n";
    out += indent + "      \"averages\": {\"piu\": " + fmt6(m.mean_piu) +
           ", \"liu\": " + fmt6(m.mean_liu) + ", \"dr\": " + fmt6(m.mean_dr) +
           ", \"ra\": " + fmt6(m.mean_ra) + ", \"fm\": " + fmt6(m.mean_fm) + "},\n";
    out += indent + "      \"pages\": [\n";
    for (std::size_t pi = 0; pi < m.pages.size(); ++pi) {
      const PageResult& p = m.pages[pi];
      out += indent + "        {\"page\": \"" + json_escape(p.page) + "\", \"piu\": " +
             fmt6(p.metrics.piu) + ", \"liu\": " + fmt6(p.metrics.liu) + ", \"dr\": " +
             fmt6(p.metrics.dr) + ", \"ra\": " + fmt6(p.metrics.ra) + ", \"fm\": " +
             fmt6(p.metrics.fm) + ", \"n_gt_lines\": " + std::to_string(p.metrics.n_gt_lines) +
             ", \"n_pred_lines\": " + std::to_string(p.metrics.n_pred_lines) +
             ", \"n_matches\": " + std::to_string(p.metrics.n_matches) + ", \"missing_pred\": " +
             (p.missing_pred ? "true" : "false") + "}";
      out += pi + 1 < m.pages.size() ? ",\n" : "\n";
    }
    out += indent + "      ]\n";
    out += indent + "    }";
    out += mi + 1 < sys.manuscripts.size() ? ",\n" : "\n";
  }
  out += indent + "  ]\n";
  out += indent + "}";
}

void append_system_csv(std::string& out, const SystemReport& sys) {
  double sum_piu = 0, sum_liu = 0, sum_dr = 0, sum_ra = 0, sum_fm = 0;
  for (const ManuscriptReport& m : sys.manuscripts) {
    for (const PageResult& p : m.pages)
      out += sys.system + "," + m.name + "," + p.page + "," + fmt6(p.metrics.piu) + "," +
             fmt6(p.metrics.liu) + "," + fmt6(p.metrics.dr) + "," + fmt6(p.metrics.ra) + "," +
             fmt6(p.metrics.fm) + "\n";
    out += sys.system + "," + m.name + ",(average)," + fmt6(m.mean_piu) + "," +
           fmt6(m.mean_liu) + "," + fmt6(m.mean_dr) + "," + fmt6(m.mean_ra) + "," +
           fmt6(m.mean_fm) + "\n";
    sum_piu += m.mean_piu;
    sum_liu += m.mean_liu;
    sum_dr += m.mean_dr;
    sum_ra += m.mean_ra;
    sum_fm += m.mean_fm;
  }
  const double n = sys.manuscripts.empty() ? 1.0 : static_cast<double>(sys.manuscripts.size());
  out += sys.system + ",,(overall)," + fmt6(sum_piu / n) + "," + fmt6(sum_liu / n) + "," +
         fmt6(sum_dr / n) + "," + fmt6(sum_ra / n) + "," + fmt6(sum_fm / n) + "\n";
}

}  // namespace

std::string report_to_json(const Leaderboard& lb) {
  std::string out = "{\n  \"systems\": [\n";
  for (std::size_t i = 0; i < lb.entries.size(); ++i) {
    append_system_json(out, lb.entries[i], "    ");
    out += i + 1 < lb.entries.size() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string report_to_csv(const Leaderboard& lb) {
  std::string out = "system,manuscript,page,piu,liu,dr,ra,fm\n";
  for (const SystemReport& sys : lb.entries) append_system_csv(out, sys);
  return out;
}

std::string report_to_json(const SystemReport& report) {
  Leaderboard lb;
  lb.entries.push_back(report);
  return report_to_json(lb);
}

std::string report_to_csv(const SystemReport& report) {
  Leaderboard lb;
  lb.entries.push_back(report);
  return report_to_csv(lb);
}

}  // namespace lineseg
