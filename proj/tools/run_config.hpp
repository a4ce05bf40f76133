#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stablefs/criteria.hpp"
#include "stablefs/stability.hpp"

namespace stablefs::cli {

struct SyntheticSpec {
  std::size_t samples = 100;
  std::size_t features = 500;
  std::size_t informative = 10;
  double separation = 2.5;
  std::optional<std::uint64_t> seed;  // falls back to the run seed

  /// "samples=100,features=500,informative=10,separation=2.5[,seed=7]".
  /// Unlisted keys keep their defaults.
  static SyntheticSpec parse(std::string_view text);
  std::string to_string() const;
};

/// Every knob of a run. Built from defaults, then a key=value config file,
/// then command-line flags; later sources win.
struct RunConfig {
  std::vector<std::string> data;
  std::string label_column = "label";
  std::optional<SyntheticSpec> synthetic;
  std::vector<CriterionKind> criteria;  // empty: command default
  std::size_t rounds = 100;
  double fraction = 0.2;
  std::size_t per_round_k = 100;
  std::uint32_t bins = 10;
  std::size_t folds = 10;
  std::size_t curve_cap = 200;
  std::size_t repetitions = 10;
  std::uint64_t seed = 0;
  std::filesystem::path out = ".";
  unsigned threads = 1;

  /// Applies one setting by its flag name without dashes, e.g.
  /// ("per-round-k", "25"). Repeated list keys (data, criterion) append.
  /// Throws std::invalid_argument on unknown keys or malformed values.
  void set(std::string_view key, std::string_view value);

  /// Reads `key = value` lines; blank lines and '#' comments are ignored.
  void load_file(const std::filesystem::path& path);

  /// Result-affecting settings as sorted key=value lines. Excludes the
  /// output directory and thread count, neither of which changes results.
  std::string canonical() const;
  /// FNV-1a 64 of canonical(), as 16 hex digits.
  std::string hash() const;

  HistogramConfig histogram_config(CriterionKind criterion) const;
};

}  // namespace stablefs::cli
