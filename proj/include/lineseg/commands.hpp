#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "lineseg/gpi.hpp"
#include "lineseg/metrics.hpp"
#include "lineseg/postprocess.hpp"
#include "lineseg/synth.hpp"
#include "lineseg/tauch.hpp"

namespace lineseg {

// Process exit codes shared by the library commands and the CLI binary.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;  // configuration errors
inline constexpr int kExitData = 3;    // dataset/file errors
inline constexpr int kExitPages = 4;   // one or more pages failed to process

struct CalibrationData {
  std::map<std::string, std::int64_t> gpi_area_thresholds;      // per manuscript
  std::map<std::string, std::pair<double, double>> tauch_height_bounds;  // px
};

struct RunConfig {
  std::string pipeline = "tauch";     // tauch | gpi
  std::string postprocess = "off";    // off | srcb | close7x7
  std::filesystem::path data_root;
  std::filesystem::path out_dir;
  int workers = 1;
  std::uint64_t seed = 1;
  SplitCounts counts;
  TauchConfig tauch;
  GpiConfig gpi;
  SrcbParams srcb;
  CalibrationData calibration;
};

// JSON config round-trip. Unknown keys are rejected so typos surface.
RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& cfg, const std::filesystem::path& path);

// Runs one page through the configured pipeline (+ postprocess).
InstanceMap segment_page(const GrayImage& img, const RunConfig& cfg,
                         const std::string& manuscript);

// generate: synthesize the dataset under cfg.data_root.
int cmd_generate(const RunConfig& cfg, std::ostream& log);

// calibrate: derive the per-manuscript GPI area thresholds (and char-height
// bounds) from the ground truth of `split` only; optionally persists the
// updated config.
int cmd_calibrate(RunConfig& cfg, const std::string& split,
                  const std::filesystem::path& save_path, std::ostream& log);

// segment: run the pipeline over every page of the split, writing instance
// PNGs to cfg.out_dir/<manuscript>/<stem>.png. Per-page failures are
// logged and skipped; any failure turns the exit code into kExitPages.
int cmd_segment(const RunConfig& cfg, const std::string& split, std::ostream& log);

// evaluate: score a prediction directory against the split's ground truth;
// writes report.json/report.csv (and optional overlays) into out_dir.
int cmd_evaluate(const std::filesystem::path& pred_dir, const RunConfig& cfg,
                 const std::string& split, const std::filesystem::path& out_dir,
                 bool overlays, std::ostream& log, SystemReport* result = nullptr);

// leaderboard: evaluate several systems and rank them by average LIU.
int cmd_leaderboard(const std::vector<std::pair<std::string, std::filesystem::path>>& systems,
                    const RunConfig& cfg, const std::string& split,
                    const std::filesystem::path& out_dir, std::ostream& log,
                    Leaderboard* result = nullptr);

}  // namespace lineseg
