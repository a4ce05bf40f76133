#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "stablefs/criteria.hpp"
#include "stablefs/cross_validation.hpp"
#include "stablefs/data.hpp"

namespace stablefs {

struct HistogramConfig {
  std::size_t rounds = 100;
  double subset_fraction = 0.2;
  std::size_t per_round_k = 100;
  CriterionKind criterion = CriterionKind::Fisher;
  std::uint32_t n_bins = 10;
  std::size_t cv_folds = 10;
  std::size_t curve_cap = 200;
  std::uint64_t master_seed = 0;
  // Wall time only; results are identical for every value.
  unsigned threads = 1;

  /// Throws std::invalid_argument describing the first violated bound.
  void validate(std::size_t n_features) const;
};

/// Occurrence counts of features across the per-round top-k lists.
struct FeatureHistogram {
  std::size_t rounds = 0;
  std::size_t per_round_k = 0;
  std::vector<std::size_t> counts;  // per feature
  std::vector<double> weights;      // counts / sum(counts)
  FeatureList order;                // descending count, ties by ascending index

  std::size_t n_features() const noexcept { return counts.size(); }
  std::size_t n_nonzero() const noexcept;
  std::size_t total() const noexcept { return rounds * per_round_k; }

  bool operator==(const FeatureHistogram&) const = default;
};

/// Produces the top-k list of one round.
using RoundSelector = std::function<FeatureList(std::size_t round)>;

/// Accumulates one histogram from `rounds` calls of `select_round`, each
/// of which must return exactly `per_round_k` distinct features. Rounds run
/// on `threads` workers; counts are merged per round so the result does not
/// depend on the schedule.
FeatureHistogram accumulate_histogram(std::size_t n_features, std::size_t rounds,
                                      std::size_t per_round_k, const RoundSelector& select_round,
                                      unsigned threads = 1);

/// Each round r subsamples `train` with a seed derived from
/// (master_seed, r), ranks all features on the subset and counts its top-k.
FeatureHistogram build_histogram(const Dataset& ds, std::span<const std::size_t> train,
                                 const HistogramConfig& cfg);

/// Sum of the weights of the first prefix_len features in histogram order.
double cumulative_area(const FeatureHistogram& hist, std::size_t prefix_len);

struct CurvePoint {
  std::size_t prefix_len = 0;
  double cumulative_area = 0.0;
  double cv_accuracy = 0.0;

  bool operator==(const CurvePoint&) const = default;
};

struct ThresholdChoice {
  double threshold = 0.0;
  std::size_t best_prefix_len = 0;
  std::vector<CurvePoint> curve;
};

/// Returns the accuracy of each prefix of `ordered` up to max_len features.
using PrefixCurveEvaluator =
    std::function<std::vector<double>(std::span<const std::size_t> ordered, std::size_t max_len)>;

/// Sweeps prefixes of the nonzero-count features in histogram order, up to
/// curve_cap of them, and picks the most accurate one. Equal accuracies go
/// to the shorter prefix.
ThresholdChoice select_threshold(const FeatureHistogram& hist, std::size_t curve_cap,
                                 const PrefixCurveEvaluator& evaluate);

/// Same, with stratified cross-validated naive Bayes accuracy on `train`.
ThresholdChoice select_threshold(const Dataset& ds, std::span<const std::size_t> train,
                                 const FeatureHistogram& hist, const HistogramConfig& cfg);

struct RankedFeatures {
  FeatureList features;
  std::vector<double> cv_accuracy;
};

/// Orders `stable_prefix` by the cross-validated accuracy of a naive Bayes
/// model on each feature alone. Equal accuracies keep their input order.
RankedFeatures rank_stable_features(const Dataset& ds, std::span<const std::size_t> train,
                                    std::span<const std::size_t> stable_prefix,
                                    const HistogramConfig& cfg);

struct SelectionResult {
  FeatureHistogram histogram;
  double threshold = 0.0;
  std::size_t best_prefix_len = 0;
  FeatureList stable_features;
  std::vector<double> per_feature_cv;
  std::vector<CurvePoint> accuracy_curve;
};

/// Full pipeline: histogram, threshold, per-feature ranking.
SelectionResult select(const Dataset& ds, std::span<const std::size_t> train,
                       const HistogramConfig& cfg);

/// The fold assignment used by select() for the given training set.
FoldAssignment selection_folds(const Dataset& ds, std::span<const std::size_t> train,
                               const HistogramConfig& cfg);

}  // namespace stablefs
