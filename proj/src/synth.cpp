#include "lineseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lineseg/dataset.hpp"
#include "lineseg/rng.hpp"

namespace lineseg {

namespace {

struct Layout {
  int margin_x, margin_y, gutter, col_width, ascent, descent, pitch;
};

Layout plan_layout(const PageSpec& s) {
  if (s.width < 8 || s.height < 8) throw std::invalid_argument("page too small");
  if (s.columns < 1 || s.lines_per_column < 1) throw std::invalid_argument("invalid layout counts");
  if (s.char_height < 4) throw std::invalid_argument("char_height must be >= 4");
  if (s.ink_level >= s.bg_level) throw std::invalid_argument("ink must be darker than background");
  if (s.baseline_curvature < 0 || s.line_spacing < 1)
    throw std::invalid_argument("invalid spacing/curvature");

  Layout l;
  l.margin_x = std::max(4, s.width / 12);
  l.margin_y = std::max(4, s.height / 14);
  l.gutter = s.columns > 1 ? std::max(30, s.width / 12) : 0;
  const int usable = s.width - 2 * l.margin_x - (s.columns - 1) * l.gutter;
  l.col_width = usable / s.columns;
  // Ascender/descender extents keep instances separated whenever
  // line_spacing >= char_height.
  l.ascent = (s.char_height - 1) / 2;
  l.descent = (s.char_height - 1) / 2;
  l.pitch = s.char_height + s.line_spacing;

  const int char_width = std::max(3, s.char_height * 3 / 5);
  if (l.col_width < 3 * char_width) throw std::invalid_argument("columns too narrow for words");
  const int last_bottom = l.margin_y + l.ascent + (s.lines_per_column - 1) * l.pitch +
                          s.char_height - 1 + l.descent + s.baseline_curvature;
  if (last_bottom > s.height - 1 - l.margin_y)
    throw std::invalid_argument("lines overflow the page");
  return l;
}

// Quadratic bow, integer arithmetic: 0 at the column edges, `bow` at the
// middle, sagging downward.
int bow_offset(int x, int x0, int x1, int bow) {
  if (bow == 0 || x1 <= x0) return 0;
  const std::int64_t span = x1 - x0;
  const std::int64_t t = 4LL * bow * (x - x0) * (x1 - x);
  return static_cast<int>(t / (span * span));
}

struct WordBox {
  int x0, x1;       // inclusive horizontal extent
  int asc_x0 = 0, asc_x1 = -1;  // ascender bump extent (empty when x1 < x0)
  int desc_x0 = 0, desc_x1 = -1;
};

// Word layout for one line; pure function of the derived rng stream.
std::vector<WordBox> plan_words(Rng& rng, int cs, int ce, int char_width) {
  std::vector<WordBox> words;
  int x = cs;
  while (true) {
    const int w = static_cast<int>(rng.next_int(2LL * char_width, 5LL * char_width));
    const int x1 = std::min(ce, x + w - 1);
    if (x1 - x + 1 < char_width) break;
    WordBox box{x, x1};
    if (rng.next_int(0, 2) == 0) {  // ascender bump
      const int bw = static_cast<int>(rng.next_int(2, std::max<std::int64_t>(2, char_width)));
      const int bx = static_cast<int>(rng.next_int(box.x0, std::max(box.x0, box.x1 - bw + 1)));
      box.asc_x0 = bx;
      box.asc_x1 = std::min(box.x1, bx + bw - 1);
    }
    if (rng.next_int(0, 2) == 0) {  // descender bump
      const int bw = static_cast<int>(rng.next_int(2, std::max<std::int64_t>(2, char_width)));
      const int bx = static_cast<int>(rng.next_int(box.x0, std::max(box.x0, box.x1 - bw + 1)));
      box.desc_x0 = bx;
      box.desc_x1 = std::min(box.x1, bx + bw - 1);
    }
    words.push_back(box);
    if (x1 >= ce) break;
    x = x1 + 1 + static_cast<int>(rng.next_int(std::max(2, char_width / 3),
                                               std::max(3, char_width * 2 / 3)));
    if (x + char_width > ce) break;
  }
  return words;
}

}  // namespace

SynthPage generate_page(const PageSpec& spec) {
  const Layout l = plan_layout(spec);
  const int w = spec.width, h = spec.height;
  const int char_width = std::max(3, spec.char_height * 3 / 5);

  SynthPage page;
  page.spec = spec;
  page.image = GrayImage(w, h, static_cast<double>(spec.bg_level));
  page.gt = InstanceMap(w, h);

  double ink_value = spec.ink_level;
  if (spec.degradation == Degradation::Faded)
    ink_value = spec.ink_level +
                std::floor(spec.fade_alpha * (spec.bg_level - spec.ink_level) + 0.5);

  std::int32_t label = 0;
  for (int col = 0; col < spec.columns; ++col) {
    const int cs = l.margin_x + col * (l.col_width + l.gutter);
    const int ce = cs + l.col_width - 1;
    for (int line = 0; line < spec.lines_per_column; ++line) {
      ++label;
      Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(col) + 1,
                       static_cast<std::uint64_t>(line) + 1));
      const int body_top = l.margin_y + l.ascent + line * l.pitch;
      const auto words = plan_words(rng, cs, ce, char_width);
      for (const WordBox& word : words) {
        for (int x = word.x0; x <= word.x1; ++x) {
          const int dy = bow_offset(x, cs, ce, spec.baseline_curvature);
          const int top = body_top + dy;
          const int bottom = top + spec.char_height - 1;
          for (int y = top; y <= bottom; ++y) {
            // rounded corners: clip one pixel diagonally
            const int cx = std::min(x - word.x0, word.x1 - x);
            const int cy = std::min(y - top, bottom - y);
            if (cx + cy < 1 && spec.char_height >= 8) continue;
            page.image.at(x, y) = ink_value;
            page.gt.set(x, y, label);
          }
          if (x >= word.asc_x0 && x <= word.asc_x1)
            for (int y = top - l.ascent; y < top; ++y) {
              page.image.at(x, y) = ink_value;
              page.gt.set(x, y, label);
            }
          if (x >= word.desc_x0 && x <= word.desc_x1)
            for (int y = bottom + 1; y <= bottom + l.descent; ++y) {
              page.image.at(x, y) = ink_value;
              page.gt.set(x, y, label);
            }
        }
      }
    }
  }

  if (spec.degradation == Degradation::Stains && spec.stain_count > 0) {
    Rng rng(mix_seed(spec.seed, 0x57a1'ee3dULL));
    for (int i = 0; i < spec.stain_count; ++i) {
      const int cx = static_cast<int>(rng.next_int(0, w - 1));
      const int cy = static_cast<int>(rng.next_int(0, h - 1));
      const int r = static_cast<int>(rng.next_int(2LL * spec.char_height,
                                                  6LL * spec.char_height));
      const double depth = 0.10 + 0.15 * rng.next_unit();
      const std::int64_t r2 = static_cast<std::int64_t>(r) * r;
      for (int y = std::max(0, cy - r); y <= std::min(h - 1, cy + r); ++y)
        for (int x = std::max(0, cx - r); x <= std::min(w - 1, cx + r); ++x) {
          const std::int64_t d2 = static_cast<std::int64_t>(x - cx) * (x - cx) +
                                  static_cast<std::int64_t>(y - cy) * (y - cy);
          if (d2 >= r2) continue;
          const double t = 1.0 - static_cast<double>(d2) / static_cast<double>(r2);
          page.image.at(x, y) *= 1.0 - depth * t * t;
        }
    }
  }

  if (spec.noise_std > 0.0) {
    Rng rng(mix_seed(spec.seed, 0x4e01'5e00ULL));
    for (double& v : page.image.data)
      v = std::clamp(std::floor(v + spec.noise_std * rng.next_gauss() + 0.5), 0.0, 255.0);
  } else {
    for (double& v : page.image.data) v = std::floor(v + 0.5);
  }

  page.gt = normalize_labels(page.gt);
  return page;
}

std::vector<ManuscriptSpec> default_manuscripts(std::uint64_t seed) {
  std::vector<ManuscriptSpec> out(3);

  // Page heights keep the text block filling the page; a large empty
  // margin would read as a separator corridor.
  out[0].name = "synth_a";
  out[0].base = PageSpec{};
  out[0].base.width = 360;
  out[0].base.height = 260;
  out[0].base.columns = 1;
  out[0].base.lines_per_column = 8;
  out[0].base.char_height = 12;
  out[0].base.line_spacing = 16;
  out[0].base.seed = mix_seed(seed, 1);

  out[1].name = "synth_b";
  out[1].base = PageSpec{};
  out[1].base.width = 600;
  out[1].base.height = 150;
  out[1].base.columns = 2;
  out[1].base.lines_per_column = 5;
  out[1].base.char_height = 12;
  out[1].base.line_spacing = 14;
  out[1].base.noise_std = 3.0;
  out[1].base.seed = mix_seed(seed, 2);

  out[2].name = "synth_c";
  out[2].base = PageSpec{};
  out[2].base.width = 380;
  out[2].base.height = 240;
  out[2].base.columns = 1;
  out[2].base.lines_per_column = 7;
  out[2].base.char_height = 12;
  out[2].base.line_spacing = 18;
  out[2].base.baseline_curvature = 4;
  out[2].base.noise_std = 5.0;
  out[2].base.degradation = Degradation::Stains;
  out[2].base.stain_count = 2;
  out[2].base.seed = mix_seed(seed, 3);

  return out;
}

void generate_dataset(const std::filesystem::path& root,
                      const std::vector<ManuscriptSpec>& manuscripts,
                      const SplitCounts& counts) {
  namespace fs = std::filesystem;
  const std::pair<const char*, int> splits[] = {
      {"train", counts.train}, {"validation", counts.validation}, {"test", counts.test}};
  for (const ManuscriptSpec& m : manuscripts) {
    int split_id = 0;
    for (const auto& [split, count] : splits) {
      ++split_id;
      if (count <= 0) continue;
      const fs::path img_dir = root / m.name / split / "img";
      const fs::path gt_dir = root / m.name / split / "gt";
      fs::create_directories(img_dir);
      fs::create_directories(gt_dir);
      for (int i = 0; i < count; ++i) {
        PageSpec spec = m.base;
        spec.seed = mix_seed(m.base.seed, static_cast<std::uint64_t>(split_id),
                             static_cast<std::uint64_t>(i));
        const SynthPage page = generate_page(spec);
        char name[32];
        std::snprintf(name, sizeof(name), "page_%03d.png", i);
        write_file(img_dir / name, encode_gray_png(page.image));
        write_file(gt_dir / name, encode_instance_png(page.gt));
      }
    }
  }
}

}  // namespace lineseg
