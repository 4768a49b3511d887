#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "lineseg/commands.hpp"
#include "lineseg/dataset.hpp"
#include "lineseg/error.hpp"

using namespace lineseg;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const char* name) {
  const auto dir = fs::temp_directory_path() / "lineseg_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Byte map of every regular file under a directory, keyed by relative path.
std::map<std::string, std::vector<std::uint8_t>> snapshot(const fs::path& root) {
  std::map<std::string, std::vector<std::uint8_t>> out;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file())
      out[fs::relative(entry.path(), root).string()] = read_file(entry.path());
  return out;
}

RunConfig small_config(const fs::path& root) {
  RunConfig cfg;
  cfg.data_root = root;
  cfg.seed = 4242;
  cfg.counts = {1, 2, 0};
  return cfg;
}

}  // namespace

TEST_CASE("config round trip and validation") {
  const auto dir = temp_dir("config");
  RunConfig cfg;
  cfg.pipeline = "gpi";
  cfg.postprocess = "srcb";
  cfg.workers = 3;
  cfg.seed = 99;
  cfg.tauch.sigma_factor = 0.3;
  cfg.gpi.blur_kw = 27;
  cfg.calibration.gpi_area_thresholds["m1"] = 777;
  cfg.calibration.tauch_height_bounds["m1"] = {3.5, 30.0};
  save_config(cfg, dir / "cfg.json");

  const RunConfig back = load_config(dir / "cfg.json");
  CHECK(back.pipeline == "gpi");
  CHECK(back.postprocess == "srcb");
  CHECK(back.workers == 3);
  CHECK(back.seed == 99);
  CHECK(back.tauch.sigma_factor == 0.3);
  CHECK(back.gpi.blur_kw == 27);
  CHECK(back.calibration.gpi_area_thresholds.at("m1") == 777);
  CHECK(back.calibration.tauch_height_bounds.at("m1").first == 3.5);

  // unknown keys and invalid values are rejected
  std::ofstream(dir / "bad.json") << R"({"pipelien": "tauch"})";
  CHECK_THROWS_AS(load_config(dir / "bad.json"), ConfigError);
  std::ofstream(dir / "bad2.json") << R"({"pipeline": "resnet"})";
  CHECK_THROWS_AS(load_config(dir / "bad2.json"), ConfigError);
  std::ofstream(dir / "bad3.json") << "not json";
  CHECK_THROWS_AS(load_config(dir / "bad3.json"), ConfigError);
  CHECK_THROWS_AS(load_config(dir / "absent.json"), ConfigError);
}

TEST_CASE("generate, calibrate, segment, evaluate round trip") {
  const auto root = temp_dir("cmd_roundtrip");
  RunConfig cfg = small_config(root / "data");
  std::ostringstream log;
  CHECK(cmd_generate(cfg, log) == kExitOk);
  CHECK(log.str().find("synth_a") != std::string::npos);

  CHECK(cmd_calibrate(cfg, "train", root / "calibrated.json", log) == kExitOk);
  CHECK(cfg.calibration.gpi_area_thresholds.size() == 3);
  CHECK(fs::exists(root / "calibrated.json"));

  // segment with tauch, evaluate against the validation ground truth
  cfg.pipeline = "tauch";
  cfg.out_dir = root / "pred";
  CHECK(cmd_segment(cfg, "validation", log) == kExitOk);
  SystemReport report;
  CHECK(cmd_evaluate(root / "pred", cfg, "validation", root / "report", false, log, &report) ==
        kExitOk);
  CHECK(report.manuscripts.size() == 3);
  CHECK(report.overall_liu > 0.8);
  CHECK(fs::exists(root / "report" / "report.json"));
  CHECK(fs::exists(root / "report" / "report.csv"));

  // gpi needs its calibration: wiping it is a config error
  RunConfig uncalibrated = cfg;
  uncalibrated.pipeline = "gpi";
  uncalibrated.calibration.gpi_area_thresholds.clear();
  CHECK_THROWS_AS(cmd_segment(uncalibrated, "validation", log), ConfigError);
}

TEST_CASE("missing predictions score as empty and are flagged") {
  const auto root = temp_dir("cmd_missing");
  RunConfig cfg = small_config(root / "data");
  std::ostringstream log;
  cmd_generate(cfg, log);

  // prediction directory with no files at all
  fs::create_directories(root / "empty_pred");
  SystemReport report;
  CHECK(cmd_evaluate(root / "empty_pred", cfg, "validation", root / "rep", false, log,
                     &report) == kExitOk);
  CHECK(log.str().find("MISSING") != std::string::npos);
  for (const ManuscriptReport& m : report.manuscripts)
    for (const PageResult& p : m.pages) {
      CHECK(p.missing_pred);
      CHECK(p.metrics.liu == 0.0);
      CHECK(p.metrics.n_pred_lines == 0);
    }
}

TEST_CASE("leaderboard ranks systems") {
  const auto root = temp_dir("cmd_leaderboard");
  RunConfig cfg = small_config(root / "data");
  std::ostringstream log;
  cmd_generate(cfg, log);
  cmd_calibrate(cfg, "train", "", log);

  cfg.pipeline = "tauch";
  cfg.out_dir = root / "pred_tauch";
  cmd_segment(cfg, "validation", log);
  fs::create_directories(root / "pred_empty");

  Leaderboard lb;
  CHECK(cmd_leaderboard({{"tauch", root / "pred_tauch"}, {"empty", root / "pred_empty"}}, cfg,
                        "validation", root / "board", log, &lb) == kExitOk);
  REQUIRE(lb.entries.size() == 2);
  CHECK(lb.entries[0].system == "tauch");
  CHECK(lb.entries[0].overall_liu > lb.entries[1].overall_liu);
  CHECK(fs::exists(root / "board" / "leaderboard.csv"));
}

TEST_CASE("full run is deterministic across reruns and worker counts") {
  const auto root = temp_dir("cmd_determinism");
  auto run = [&](const fs::path& dir, int workers) {
    RunConfig cfg = small_config(dir / "data");
    cfg.workers = workers;
    std::ostringstream log;
    cmd_generate(cfg, log);
    cmd_calibrate(cfg, "train", "", log);
    cfg.pipeline = "tauch";
    cfg.out_dir = dir / "pred_tauch";
    cmd_segment(cfg, "validation", log);
    cmd_evaluate(cfg.out_dir, cfg, "validation", dir / "rep_tauch", false, log);
    cfg.pipeline = "gpi";
    cfg.out_dir = dir / "pred_gpi";
    cmd_segment(cfg, "validation", log);
    cmd_evaluate(cfg.out_dir, cfg, "validation", dir / "rep_gpi", false, log);
    return snapshot(dir);
  };
  const auto a = run(root / "a", 1);
  const auto b = run(root / "b", 1);
  const auto c = run(root / "c", 4);
  CHECK(a == b);
  CHECK(a == c);
}

TEST_CASE("segment applies the postprocess options") {
  const auto root = temp_dir("cmd_postprocess");
  RunConfig cfg = small_config(root / "data");
  cfg.counts = {1, 1, 0};
  std::ostringstream log;
  cmd_generate(cfg, log);

  cfg.pipeline = "tauch";
  for (const char* post : {"srcb", "close7x7"}) {
    cfg.postprocess = post;
    cfg.out_dir = root / ("pred_" + std::string(post));
    CHECK(cmd_segment(cfg, "validation", log) == kExitOk);
    SystemReport report;
    cmd_evaluate(cfg.out_dir, cfg, "validation", "", false, log, &report);
    CHECK(report.overall_liu > 0.5);  // postprocessing keeps clean pages intact
  }
}

#ifdef LINESEG_CLI_PATH
TEST_CASE("cli exit codes") {
  const auto root = temp_dir("cli_codes");
  const std::string cli = LINESEG_CLI_PATH;
  auto run = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
  };
  CHECK(run("--help") == 0);
  CHECK(run("generate --out " + (root / "d").string() + " --seed 5 --counts 1,0,0") == 0);
  CHECK(run("nonsense") == kExitConfig);
  CHECK(run("segment --data " + (root / "d").string() + " --out " + (root / "p").string() +
            " --pipeline nope") == kExitConfig);
  // gpi without calibration is a config error
  CHECK(run("segment --data " + (root / "d").string() + " --out " + (root / "p").string() +
            " --pipeline gpi --split train") == kExitConfig);
  // missing dataset root is a data error
  CHECK(run("segment --data " + (root / "absent").string() + " --out " + (root / "p").string() +
            " --pipeline tauch") == kExitData);
  // happy path through the binary
  CHECK(run("segment --data " + (root / "d").string() + " --out " + (root / "p").string() +
            " --pipeline tauch --split train") == 0);
  CHECK(run("evaluate --data " + (root / "d").string() + " --pred " + (root / "p").string() +
            " --split train --out " + (root / "r").string()) == 0);
}
#endif
