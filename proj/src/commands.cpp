#include "lineseg/commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "lineseg/dataset.hpp"
#include "lineseg/error.hpp"

namespace lineseg {

namespace {

using json = nlohmann::ordered_json;

// Index-sharded worker pool; per-index work is pure, so results are
// independent of the worker count.
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, n));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

template <typename T>
void get_to_if(const json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end())
      throw ConfigError("unknown config key '" + key + "' in " + where);
  }
}

}  // namespace

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error: " + std::string(e.what()));
  }

  RunConfig cfg;
  check_keys(j, {"pipeline", "postprocess", "data_root", "out_dir", "workers", "seed", "counts",
                 "tauch", "gpi", "srcb", "calibration"}, "config");
  get_to_if(j, "pipeline", cfg.pipeline);
  get_to_if(j, "postprocess", cfg.postprocess);
  std::string s;
  if (j.contains("data_root")) {
    j.at("data_root").get_to(s);
    cfg.data_root = s;
  }
  if (j.contains("out_dir")) {
    j.at("out_dir").get_to(s);
    cfg.out_dir = s;
  }
  get_to_if(j, "workers", cfg.workers);
  get_to_if(j, "seed", cfg.seed);
  if (j.contains("counts")) {
    const json& c = j.at("counts");
    check_keys(c, {"train", "validation", "test"}, "counts");
    get_to_if(c, "train", cfg.counts.train);
    get_to_if(c, "validation", cfg.counts.validation);
    get_to_if(c, "test", cfg.counts.test);
  }
  if (j.contains("tauch")) {
    const json& t = j.at("tauch");
    check_keys(t, {"eta", "dilation_w", "dilation_h", "blob_threshold_mode", "blob_threshold",
                   "separator_factor", "min_height_frac", "max_height_frac", "min_height_px",
                   "max_height_px", "connectivity", "vertical_dilation_factor", "sigma_factor"},
               "tauch");
    get_to_if(t, "eta", cfg.tauch.eta);
    get_to_if(t, "dilation_w", cfg.tauch.dilation_w);
    get_to_if(t, "dilation_h", cfg.tauch.dilation_h);
    if (t.contains("blob_threshold_mode")) {
      std::string mode;
      t.at("blob_threshold_mode").get_to(mode);
      if (mode == "otsu")
        cfg.tauch.blob_threshold_mode = TauchConfig::BlobThreshold::OtsuOnResponse;
      else if (mode == "fixed")
        cfg.tauch.blob_threshold_mode = TauchConfig::BlobThreshold::Fixed;
      else
        throw ConfigError("blob_threshold_mode must be 'otsu' or 'fixed'");
    }
    get_to_if(t, "blob_threshold", cfg.tauch.blob_threshold);
    get_to_if(t, "separator_factor", cfg.tauch.separator_factor);
    get_to_if(t, "min_height_frac", cfg.tauch.min_height_frac);
    get_to_if(t, "max_height_frac", cfg.tauch.max_height_frac);
    get_to_if(t, "min_height_px", cfg.tauch.min_height_px);
    get_to_if(t, "max_height_px", cfg.tauch.max_height_px);
    get_to_if(t, "connectivity", cfg.tauch.connectivity);
    get_to_if(t, "vertical_dilation_factor", cfg.tauch.vertical_dilation_factor);
    get_to_if(t, "sigma_factor", cfg.tauch.sigma_factor);
  }
  if (j.contains("gpi")) {
    const json& g = j.at("gpi");
    check_keys(g, {"tv_weight", "tv_max_iter", "tv_tol", "tophat_radius", "blur_kw", "blur_kh",
                   "valley_threshold", "ellipse_w", "ellipse_h", "extrapolation_margin",
                   "area_threshold_factor", "area_percentile", "connectivity"},
               "gpi");
    get_to_if(g, "tv_weight", cfg.gpi.tv_weight);
    get_to_if(g, "tv_max_iter", cfg.gpi.tv_max_iter);
    get_to_if(g, "tv_tol", cfg.gpi.tv_tol);
    get_to_if(g, "tophat_radius", cfg.gpi.tophat_radius);
    get_to_if(g, "blur_kw", cfg.gpi.blur_kw);
    get_to_if(g, "blur_kh", cfg.gpi.blur_kh);
    get_to_if(g, "valley_threshold", cfg.gpi.valley_threshold);
    get_to_if(g, "ellipse_w", cfg.gpi.ellipse_w);
    get_to_if(g, "ellipse_h", cfg.gpi.ellipse_h);
    get_to_if(g, "extrapolation_margin", cfg.gpi.extrapolation_margin);
    get_to_if(g, "area_threshold_factor", cfg.gpi.area_threshold_factor);
    get_to_if(g, "area_percentile", cfg.gpi.area_percentile);
    get_to_if(g, "connectivity", cfg.gpi.connectivity);
  }
  if (j.contains("srcb")) {
    const json& p = j.at("srcb");
    check_keys(p, {"d_max", "g_min", "stroke", "min_area_factor", "connectivity"}, "srcb");
    get_to_if(p, "d_max", cfg.srcb.d_max);
    get_to_if(p, "g_min", cfg.srcb.g_min);
    get_to_if(p, "stroke", cfg.srcb.stroke);
    get_to_if(p, "min_area_factor", cfg.srcb.min_area_factor);
    get_to_if(p, "connectivity", cfg.srcb.connectivity);
  }
  if (j.contains("calibration")) {
    const json& c = j.at("calibration");
    check_keys(c, {"gpi_area_thresholds", "tauch_height_bounds"}, "calibration");
    if (c.contains("gpi_area_thresholds"))
      for (const auto& [name, value] : c.at("gpi_area_thresholds").items())
        cfg.calibration.gpi_area_thresholds[name] = value.get<std::int64_t>();
    if (c.contains("tauch_height_bounds"))
      for (const auto& [name, value] : c.at("tauch_height_bounds").items())
        cfg.calibration.tauch_height_bounds[name] = {value.at(0).get<double>(),
                                                     value.at(1).get<double>()};
  }
  if (cfg.pipeline != "tauch" && cfg.pipeline != "gpi")
    throw ConfigError("pipeline must be 'tauch' or 'gpi'");
  if (cfg.postprocess != "off" && cfg.postprocess != "srcb" && cfg.postprocess != "close7x7")
    throw ConfigError("postprocess must be 'off', 'srcb' or 'close7x7'");
  if (cfg.workers < 1) throw ConfigError("workers must be >= 1");
  return cfg;
}

void save_config(const RunConfig& cfg, const std::filesystem::path& path) {
  json j;
  j["pipeline"] = cfg.pipeline;
  j["postprocess"] = cfg.postprocess;
  j["data_root"] = cfg.data_root.string();
  j["out_dir"] = cfg.out_dir.string();
  j["workers"] = cfg.workers;
  j["seed"] = cfg.seed;
  j["counts"] = {{"train", cfg.counts.train},
                 {"validation", cfg.counts.validation},
                 {"test", cfg.counts.test}};
  j["tauch"] = {
      {"eta", cfg.tauch.eta},
      {"dilation_w", cfg.tauch.dilation_w},
      {"dilation_h", cfg.tauch.dilation_h},
      {"blob_threshold_mode",
       cfg.tauch.blob_threshold_mode == TauchConfig::BlobThreshold::OtsuOnResponse ? "otsu"
                                                                                   : "fixed"},
      {"blob_threshold", cfg.tauch.blob_threshold},
      {"separator_factor", cfg.tauch.separator_factor},
      {"min_height_frac", cfg.tauch.min_height_frac},
      {"max_height_frac", cfg.tauch.max_height_frac},
      {"min_height_px", cfg.tauch.min_height_px},
      {"max_height_px", cfg.tauch.max_height_px},
      {"connectivity", cfg.tauch.connectivity},
      {"vertical_dilation_factor", cfg.tauch.vertical_dilation_factor},
      {"sigma_factor", cfg.tauch.sigma_factor},
  };
  j["gpi"] = {
      {"tv_weight", cfg.gpi.tv_weight},
      {"tv_max_iter", cfg.gpi.tv_max_iter},
      {"tv_tol", cfg.gpi.tv_tol},
      {"tophat_radius", cfg.gpi.tophat_radius},
      {"blur_kw", cfg.gpi.blur_kw},
      {"blur_kh", cfg.gpi.blur_kh},
      {"valley_threshold", cfg.gpi.valley_threshold},
      {"ellipse_w", cfg.gpi.ellipse_w},
      {"ellipse_h", cfg.gpi.ellipse_h},
      {"extrapolation_margin", cfg.gpi.extrapolation_margin},
      {"area_threshold_factor", cfg.gpi.area_threshold_factor},
      {"area_percentile", cfg.gpi.area_percentile},
      {"connectivity", cfg.gpi.connectivity},
  };
  j["srcb"] = {
      {"d_max", cfg.srcb.d_max},
      {"g_min", cfg.srcb.g_min},
      {"stroke", cfg.srcb.stroke},
      {"min_area_factor", cfg.srcb.min_area_factor},
      {"connectivity", cfg.srcb.connectivity},
  };
  json thresholds = json::object();
  for (const auto& [name, value] : cfg.calibration.gpi_area_thresholds) thresholds[name] = value;
  json bounds = json::object();
  for (const auto& [name, value] : cfg.calibration.tauch_height_bounds)
    bounds[name] = {value.first, value.second};
  j["calibration"] = {{"gpi_area_thresholds", thresholds}, {"tauch_height_bounds", bounds}};

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ConfigError("cannot write config: " + path.string());
  out << j.dump(2) << "\n";
}

InstanceMap segment_page(const GrayImage& img, const RunConfig& cfg,
                         const std::string& manuscript) {
  InstanceMap result;
  if (cfg.pipeline == "tauch") {
    TauchConfig tc = cfg.tauch;
    const auto it = cfg.calibration.tauch_height_bounds.find(manuscript);
    if (it != cfg.calibration.tauch_height_bounds.end()) {
      tc.min_height_px = it->second.first;
      tc.max_height_px = it->second.second;
    }
    result = run_tauch(img, tc);
  } else if (cfg.pipeline == "gpi") {
    const auto it = cfg.calibration.gpi_area_thresholds.find(manuscript);
    if (it == cfg.calibration.gpi_area_thresholds.end())
      throw ConfigError("gpi requires a calibrated area threshold for manuscript '" +
                        manuscript + "' (run calibrate first)");
    result = run_gpi(img, cfg.gpi, it->second);
  } else {
    throw ConfigError("unknown pipeline: " + cfg.pipeline);
  }

  if (cfg.postprocess == "srcb")
    result = srcb_postprocess(result, cfg.srcb);
  else if (cfg.postprocess == "close7x7")
    result = close_postprocess(result);
  else if (cfg.postprocess != "off")
    throw ConfigError("unknown postprocess: " + cfg.postprocess);
  return normalize_labels(result);
}

int cmd_generate(const RunConfig& cfg, std::ostream& log) {
  if (cfg.data_root.empty()) throw ConfigError("generate requires a data root (--data/--out)");
  const auto manuscripts = default_manuscripts(cfg.seed);
  generate_dataset(cfg.data_root, manuscripts, cfg.counts);
  const int per = cfg.counts.train + cfg.counts.validation + cfg.counts.test;
  for (const ManuscriptSpec& m : manuscripts)
    log << m.name << ": " << per << " pages (" << cfg.counts.train << " train, "
        << cfg.counts.validation << " validation, " << cfg.counts.test << " test)\n";
  return kExitOk;
}

int cmd_calibrate(RunConfig& cfg, const std::string& split,
                  const std::filesystem::path& save_path, std::ostream& log) {
  const DatasetLayout layout = scan_dataset(cfg.data_root);
  if (layout.manuscripts.empty()) throw DataError("no manuscripts under " + cfg.data_root.string());

  for (const ManuscriptEntry& m : layout.manuscripts) {
    const SplitEntry* entry = layout.find(m.name, split);
    if (entry == nullptr || entry->pages.empty())
      throw DataError("manuscript '" + m.name + "' has no '" + split + "' pages");

    std::vector<std::int64_t> areas;
    std::vector<double> heights;
    for (const PagePair& page : entry->pages) {
      if (!page.has_gt) throw DataError("calibration requires ground truth: " + page.image.string());
      const InstanceMap gt = decode_instance_png(read_file(page.gt));
      const std::int32_t n = gt.max_label();
      std::vector<std::int64_t> area(n + 1, 0);
      std::vector<int> min_y(n + 1, gt.height), max_y(n + 1, -1);
      for (int y = 0; y < gt.height; ++y)
        for (int x = 0; x < gt.width; ++x) {
          const std::int32_t l = gt.at(x, y);
          if (l <= 0) continue;
          ++area[l];
          min_y[l] = std::min(min_y[l], y);
          max_y[l] = std::max(max_y[l], y);
        }
      for (std::int32_t l = 1; l <= n; ++l)
        if (area[l] > 0) {
          areas.push_back(area[l]);
          heights.push_back(max_y[l] - min_y[l] + 1);
        }
    }
    if (areas.empty()) throw DataError("no ground-truth lines in '" + m.name + "' " + split);

    const std::int64_t thresh =
        compute_area_threshold(areas, cfg.gpi.area_threshold_factor, cfg.gpi.area_percentile);
    cfg.calibration.gpi_area_thresholds[m.name] = thresh;

    std::nth_element(heights.begin(), heights.begin() + heights.size() / 2, heights.end());
    const double med_line_height = heights[heights.size() / 2];
    // GT components are whole lines (body + ascenders/descenders); the
    // plausible interval for character-sized components sits below that.
    cfg.calibration.tauch_height_bounds[m.name] = {0.15 * med_line_height,
                                                   1.5 * med_line_height};
    log << m.name << ": area_threshold=" << thresh << " height_bounds=["
        << 0.15 * med_line_height << ", " << 1.5 * med_line_height << "]\n";
  }
  if (!save_path.empty()) {
    save_config(cfg, save_path);
    log << "config written to " << save_path.string() << "\n";
  }
  return kExitOk;
}

namespace {

struct PageJob {
  std::string manuscript;
  PagePair pair;
};

std::vector<PageJob> collect_jobs(const DatasetLayout& layout, const std::string& split,
                                  bool require_gt) {
  std::vector<PageJob> jobs;
  for (const ManuscriptEntry& m : layout.manuscripts) {
    const SplitEntry* entry = layout.find(m.name, split);
    if (entry == nullptr) continue;
    for (const PagePair& pair : entry->pages)
      if (!require_gt || pair.has_gt) jobs.push_back({m.name, pair});
  }
  return jobs;
}

}  // namespace

int cmd_segment(const RunConfig& cfg, const std::string& split, std::ostream& log) {
  if (cfg.out_dir.empty()) throw ConfigError("segment requires an output directory");
  const DatasetLayout layout = scan_dataset(cfg.data_root);
  const std::vector<PageJob> jobs = collect_jobs(layout, split, /*require_gt=*/false);
  if (jobs.empty()) throw DataError("no pages found for split '" + split + "'");

  // gpi needs calibration for every manuscript up front.
  if (cfg.pipeline == "gpi")
    for (const PageJob& job : jobs)
      if (!cfg.calibration.gpi_area_thresholds.count(job.manuscript))
        throw ConfigError("gpi requires a calibrated area threshold for manuscript '" +
                          job.manuscript + "' (run calibrate first)");

  for (const PageJob& job : jobs)
    std::filesystem::create_directories(cfg.out_dir / job.manuscript);

  std::vector<std::string> errors(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), cfg.workers, [&](int i) {
    const PageJob& job = jobs[i];
    try {
      const GrayImage img = decode_gray_png(read_file(job.pair.image));
      const InstanceMap pred = segment_page(img, cfg, job.manuscript);
      write_file(cfg.out_dir / job.manuscript / (job.pair.stem + ".png"),
                 encode_instance_png(pred));
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  int failures = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i].empty()) continue;
    ++failures;
    log << "FAILED " << jobs[i].manuscript << "/" << jobs[i].pair.stem << ": " << errors[i]
        << "\n";
  }
  log << (jobs.size() - failures) << "/" << jobs.size() << " pages segmented to "
      << cfg.out_dir.string() << "\n";
  return failures > 0 ? kExitPages : kExitOk;
}

namespace {

void write_overlay(const std::filesystem::path& path, const GrayImage& img,
                   const InstanceMap& pred) {
  PngImage out;
  out.width = img.width;
  out.height = img.height;
  out.channels = 3;
  out.data.resize(static_cast<std::size_t>(img.width) * img.height * 3);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const std::size_t i = (static_cast<std::size_t>(y) * img.width + x) * 3;
      const auto v = static_cast<std::uint8_t>(std::clamp(img.at(x, y), 0.0, 255.0));
      out.data[i] = out.data[i + 1] = out.data[i + 2] = v;
      const std::int32_t l = pred.at(x, y);
      if (l <= 0) continue;
      const bool boundary = x == 0 || y == 0 || x == img.width - 1 || y == img.height - 1 ||
                            pred.at(x - 1, y) != l || pred.at(x + 1, y) != l ||
                            pred.at(x, y - 1) != l || pred.at(x, y + 1) != l;
      if (boundary) {
        const auto c = instance_color(l);
        out.data[i] = c[0];
        out.data[i + 1] = c[1];
        out.data[i + 2] = c[2];
      }
    }
  write_file(path, encode_png(out));
}

SystemReport evaluate_system(const std::string& system, const std::filesystem::path& pred_dir,
                             const RunConfig& cfg, const DatasetLayout& layout,
                             const std::string& split, const std::filesystem::path& overlay_dir,
                             std::ostream& log) {
  const std::vector<PageJob> jobs = collect_jobs(layout, split, /*require_gt=*/true);
  if (jobs.empty()) throw DataError("no annotated pages found for split '" + split + "'");

  std::vector<PageResult> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), cfg.workers, [&](int i) {
    const PageJob& job = jobs[i];
    try {
      const InstanceMap gt = decode_instance_png(read_file(job.pair.gt));
      const std::filesystem::path pred_path =
          pred_dir / job.manuscript / (job.pair.stem + ".png");
      InstanceMap pred;
      bool missing = false;
      if (std::filesystem::exists(pred_path)) {
        pred = decode_instance_png(read_file(pred_path));
        if (pred.width != gt.width || pred.height != gt.height)
          throw DataError("prediction size mismatch: " + pred_path.string());
      } else {
        // Missing predictions score as an all-background page.
        pred = InstanceMap(gt.width, gt.height);
        missing = true;
      }
      results[i] = {job.manuscript, job.pair.stem, evaluate_page(pred, gt), missing};
      if (!overlay_dir.empty()) {
        const GrayImage img = decode_gray_png(read_file(job.pair.image));
        std::filesystem::create_directories(overlay_dir / job.manuscript);
        write_overlay(overlay_dir / job.manuscript / (job.pair.stem + ".png"), img, pred);
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < jobs.size(); ++i)
    if (!errors[i].empty())
      throw DataError("evaluation failed on " + jobs[i].manuscript + "/" + jobs[i].pair.stem +
                      ": " + errors[i]);

  std::map<std::string, std::vector<PageResult>> by_manuscript;
  for (PageResult& r : results) by_manuscript[r.manuscript].push_back(std::move(r));
  std::vector<ManuscriptReport> reports;
  for (auto& [name, pages] : by_manuscript) {
    for (const PageResult& p : pages)
      if (p.missing_pred) log << "MISSING prediction for " << name << "/" << p.page << "\n";
    reports.push_back(make_manuscript_report(name, std::move(pages)));
  }
  return aggregate(system, std::move(reports));
}

void print_system_table(const SystemReport& sys, std::ostream& log) {
  log << std::fixed << std::setprecision(4);
  log << "system: " << sys.system << "\n";
  log << "  manuscript              piu     liu     dr      ra      fm\n";
  for (const ManuscriptReport& m : sys.manuscripts) {
    log << "  " << std::left << std::setw(22) << m.name << std::right << "  " << m.mean_piu
        << "  " << m.mean_liu << "  " << m.mean_dr << "  " << m.mean_ra << "  " << m.mean_fm
        << "\n";
  }
  log << "  overall average liu: " << sys.overall_liu << "\n";
  log.unsetf(std::ios::fixed);
}

}  // namespace

int cmd_evaluate(const std::filesystem::path& pred_dir, const RunConfig& cfg,
                 const std::string& split, const std::filesystem::path& out_dir, bool overlays,
                 std::ostream& log, SystemReport* result) {
  const DatasetLayout layout = scan_dataset(cfg.data_root);
  const std::filesystem::path overlay_dir = overlays ? out_dir / "overlays" : "";
  SystemReport report = evaluate_system(pred_dir.filename().string(), pred_dir, cfg, layout,
                                        split, overlay_dir, log);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string js = report_to_json(report);
    const std::string csv = report_to_csv(report);
    write_file(out_dir / "report.json", std::vector<std::uint8_t>(js.begin(), js.end()));
    write_file(out_dir / "report.csv", std::vector<std::uint8_t>(csv.begin(), csv.end()));
  }
  print_system_table(report, log);
  if (result) *result = std::move(report);
  return kExitOk;
}

int cmd_leaderboard(const std::vector<std::pair<std::string, std::filesystem::path>>& systems,
                    const RunConfig& cfg, const std::string& split,
                    const std::filesystem::path& out_dir, std::ostream& log,
                    Leaderboard* result) {
  if (systems.empty()) throw ConfigError("leaderboard requires at least one system");
  const DatasetLayout layout = scan_dataset(cfg.data_root);
  std::vector<SystemReport> reports;
  for (const auto& [name, dir] : systems)
    reports.push_back(evaluate_system(name, dir, cfg, layout, split, "", log));
  Leaderboard lb = make_leaderboard(std::move(reports));

  log << std::fixed << std::setprecision(4);
  log << "rank  system                  piu     liu     dr      ra      fm\n";
  int rank = 0;
  for (const SystemReport& sys : lb.entries) {
    double piu = 0, dr = 0, ra = 0, fm = 0;
    for (const ManuscriptReport& m : sys.manuscripts) {
      piu += m.mean_piu;
      dr += m.mean_dr;
      ra += m.mean_ra;
      fm += m.mean_fm;
    }
    const double n = static_cast<double>(sys.manuscripts.size());
    log << std::left << std::setw(6) << ++rank << std::setw(22) << sys.system << std::right
        << "  " << piu / n << "  " << sys.overall_liu << "  " << dr / n << "  " << ra / n << "  "
        << fm / n << "\n";
  }
  log.unsetf(std::ios::fixed);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::string js = report_to_json(lb);
    const std::string csv = report_to_csv(lb);
    write_file(out_dir / "leaderboard.json", std::vector<std::uint8_t>(js.begin(), js.end()));
    write_file(out_dir / "leaderboard.csv", std::vector<std::uint8_t>(csv.begin(), csv.end()));
  }
  if (result) *result = std::move(lb);
  return kExitOk;
}

}  // namespace lineseg
