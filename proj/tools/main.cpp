#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct Invocation {
  std::string config_path;
  Overrides overrides;
};

void add_run_flags(CLI::App& cmd, Invocation& inv) {
  cmd.add_option("--config", inv.config_path, "key=value config file; flags override it");
  auto single = [&](const char* flag, const char* key, const char* help) {
    cmd.add_option_function<std::string>(
        flag, [&inv, key](const std::string& v) { inv.overrides.emplace_back(key, v); }, help);
  };
  auto repeated = [&](const char* flag, const char* key, const char* help) {
    cmd.add_option_function<std::vector<std::string>>(
           flag,
           [&inv, key](const std::vector<std::string>& vs) {
             for (const auto& v : vs) inv.overrides.emplace_back(key, v);
           },
           help)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  };
  repeated("--data", "data", "dataset CSV (repeatable)");
  single("--label-column", "label-column", "name of the label column (default: label)");
  single("--synthetic", "synthetic",
         "synthetic dataset, e.g. samples=100,features=500,informative=10,separation=2.5");
  repeated("--criterion", "criterion", "chisquare | fisher | infogain (repeatable or comma list)");
  single("--rounds", "rounds", "resampling rounds (default 100)");
  single("--fraction", "fraction", "training fraction per round (default 0.2)");
  single("--per-round-k", "per-round-k", "features kept per round (default 100)");
  single("--bins", "bins", "equal-width bins for chi-square/infogain (default 10)");
  single("--folds", "folds", "cross-validation folds (default 10)");
  single("--curve-cap", "curve-cap", "longest prefix swept (default 200)");
  single("--repetitions", "repetitions", "train/test splits in compare (default 10)");
  single("--seed", "seed", "master seed (default 0)");
  single("--out", "out", "output directory (default .)");
  single("--threads", "threads", "worker threads; does not change results (default 1)");
}

stablefs::cli::RunConfig resolve(const Invocation& inv) {
  stablefs::cli::RunConfig cfg;
  if (!inv.config_path.empty()) cfg.load_file(inv.config_path);
  // List settings from the command line replace those from the file.
  bool data_reset = false;
  bool criterion_reset = false;
  for (const auto& [key, value] : inv.overrides) {
    if (key == "data" && !data_reset) {
      cfg.data.clear();
      data_reset = true;
    }
    if (key == "criterion" && !criterion_reset) {
      cfg.criteria.clear();
      criterion_reset = true;
    }
    cfg.set(key, value);
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable feature selection from normalized feature histograms"};
  app.require_subcommand(1);

  Invocation select_inv, compare_inv, synth_inv;
  auto* select_cmd = app.add_subcommand("select", "stable feature selection on one dataset");
  add_run_flags(*select_cmd, select_inv);
  auto* compare_cmd =
      app.add_subcommand("compare", "stable vs single-shot selection over repeated splits");
  add_run_flags(*compare_cmd, compare_inv);
  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic planted-feature dataset");
  add_run_flags(*synth_cmd, synth_inv);

  CLI11_PARSE(app, argc, argv);

  try {
    if (select_cmd->parsed()) {
      stablefs::cli::cmd_select(resolve(select_inv));
    } else if (compare_cmd->parsed()) {
      stablefs::cli::cmd_compare(resolve(compare_inv));
    } else if (synth_cmd->parsed()) {
      stablefs::cli::cmd_synth(resolve(synth_inv));
    }
  } catch (const std::exception& e) {
    std::cerr << "stablefs: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
