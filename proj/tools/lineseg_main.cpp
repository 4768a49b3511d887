#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lineseg/commands.hpp"
#include "lineseg/error.hpp"

namespace {

// --data falls back to this environment variable.
constexpr const char* kDataRootEnv = "LINESEG_DATA_ROOT";

struct CommonArgs {
  std::string config_path;
  std::string data_root;
  std::string out_dir;
  std::string pipeline;
  std::string postprocess;
  int workers = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "JSON run configuration (flags override)");
  cmd->add_option("--data", args.data_root, "dataset root directory");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--pipeline", args.pipeline, "segmentation pipeline: tauch | gpi");
  cmd->add_option("--postprocess", args.postprocess, "postprocess: off | srcb | close7x7");
  cmd->add_option("--workers", args.workers, "parallel page workers (>= 1)");
  cmd->add_option("--seed", args.seed, "generator seed")->each([&](const std::string&) {
    args.seed_set = true;
  });
}

lineseg::RunConfig resolve_config(const CommonArgs& args) {
  lineseg::RunConfig cfg;
  if (!args.config_path.empty()) cfg = lineseg::load_config(args.config_path);
  if (!args.data_root.empty()) cfg.data_root = args.data_root;
  if (cfg.data_root.empty())
    if (const char* env = std::getenv(kDataRootEnv)) cfg.data_root = env;
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (!args.pipeline.empty()) {
    if (args.pipeline != "tauch" && args.pipeline != "gpi")
      throw lineseg::ConfigError("pipeline must be 'tauch' or 'gpi'");
    cfg.pipeline = args.pipeline;
  }
  if (!args.postprocess.empty()) {
    if (args.postprocess != "off" && args.postprocess != "srcb" &&
        args.postprocess != "close7x7")
      throw lineseg::ConfigError("postprocess must be 'off', 'srcb' or 'close7x7'");
    cfg.postprocess = args.postprocess;
  }
  if (args.workers != 0) {
    if (args.workers < 1) throw lineseg::ConfigError("workers must be >= 1");
    cfg.workers = args.workers;
  }
  if (args.seed_set) cfg.seed = args.seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text-line segmentation toolkit: synthetic data generation, classical\n"
               "segmentation pipelines, and the five-metric evaluation protocol."};
  app.require_subcommand(1);

  CommonArgs args;
  std::string split;
  std::string counts_arg;
  bool overlays = false;
  std::vector<std::string> pred_specs;
  std::string save_config_path;

  CLI::App* generate = app.add_subcommand("generate", "Synthesize a dataset with ground truth");
  add_common(generate, args);
  generate->add_option("--counts", counts_arg, "train,validation,test page counts (default 3,10,15)");

  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Derive per-manuscript thresholds from the training split");
  add_common(calibrate, args);
  calibrate->add_option("--split", split, "calibration split (default: train)");
  calibrate->add_option("--save-config", save_config_path, "write the updated config here");

  CLI::App* segment = app.add_subcommand("segment", "Segment every page of a split");
  add_common(segment, args);
  segment->add_option("--split", split, "dataset split (default: validation)");

  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth");
  add_common(evaluate, args);
  evaluate->add_option("--split", split, "dataset split (default: validation)");
  evaluate->add_option("--pred", pred_specs, "prediction directory")->expected(1);
  evaluate->add_flag("--overlays", overlays, "write boundary overlay PNGs");

  CLI::App* leaderboard = app.add_subcommand("leaderboard", "Rank systems by average line IU");
  add_common(leaderboard, args);
  leaderboard->add_option("--split", split, "dataset split (default: test)");
  leaderboard->add_option("--pred", pred_specs, "name=dir prediction entries (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : lineseg::kExitConfig;
  }

  try {
    lineseg::RunConfig cfg = resolve_config(args);
    if (generate->parsed()) {
      if (!counts_arg.empty()) {
        lineseg::SplitCounts c;
        if (std::sscanf(counts_arg.c_str(), "%d,%d,%d", &c.train, &c.validation, &c.test) != 3 ||
            c.train < 0 || c.validation < 0 || c.test < 0)
          throw lineseg::ConfigError("--counts expects train,validation,test");
        cfg.counts = c;
      }
      if (cfg.data_root.empty()) cfg.data_root = cfg.out_dir;
      return lineseg::cmd_generate(cfg, std::cout);
    }
    if (calibrate->parsed()) {
      if (split.empty()) split = "train";
      return lineseg::cmd_calibrate(cfg, split, save_config_path, std::cout);
    }
    if (segment->parsed()) {
      if (split.empty()) split = "validation";
      return lineseg::cmd_segment(cfg, split, std::cout);
    }
    if (evaluate->parsed()) {
      if (split.empty()) split = "validation";
      if (pred_specs.empty()) throw lineseg::ConfigError("evaluate requires --pred");
      return lineseg::cmd_evaluate(pred_specs.front(), cfg, split, cfg.out_dir, overlays,
                                   std::cout);
    }
    if (leaderboard->parsed()) {
      if (split.empty()) split = "test";
      std::vector<std::pair<std::string, std::filesystem::path>> systems;
      for (const std::string& spec : pred_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos)
          throw lineseg::ConfigError("--pred expects name=dir, got: " + spec);
        systems.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
      }
      return lineseg::cmd_leaderboard(systems, cfg, split, cfg.out_dir, std::cout);
    }
  } catch (const lineseg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return lineseg::kExitConfig;
  } catch (const lineseg::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return lineseg::kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
