#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "run_config.hpp"
#include "stablefs/comparison.hpp"
#include "stablefs/data.hpp"
#include "stablefs/stability.hpp"

namespace stablefs::cli {

/// A file produced by a command, held in memory until every artifact of the
/// command is ready.
struct OutputFile {
  std::string name;
  std::string contents;
};

/// Writes all files into `dir` through temporaries and renames. On any
/// failure the temporaries are removed and nothing new is left in `dir`.
void commit_outputs(const std::filesystem::path& dir, const std::vector<OutputFile>& files);

struct NamedDataset {
  std::string name;
  Dataset data;
};

/// The datasets a run refers to: each --data file, then the synthetic spec.
std::vector<NamedDataset> load_datasets(const RunConfig& cfg);

std::vector<OutputFile> render_selection(const RunConfig& cfg, const Dataset& ds,
                                         const SelectionResult& result);
std::vector<OutputFile> render_report(const RunConfig& cfg, const ExperimentReport& report);

/// Stable selection treating the whole dataset as the training set.
/// Writes histogram.csv, curve.csv, selected.csv and run_meta.txt.
void cmd_select(const RunConfig& cfg);

/// Table-style comparison of the stable pipeline against single-shot
/// selection. Writes report.csv, curves.csv and run_meta.txt.
void cmd_compare(const RunConfig& cfg);

/// Writes synthetic.csv and planted.txt.
void cmd_synth(const RunConfig& cfg);

}  // namespace stablefs::cli
