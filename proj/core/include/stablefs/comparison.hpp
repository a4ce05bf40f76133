#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stablefs/criteria.hpp"
#include "stablefs/data.hpp"
#include "stablefs/stability.hpp"

namespace stablefs {

/// Single-shot baseline: top n features ranked on the whole training set.
FeatureList conventional_select(const Dataset& ds, std::span<const std::size_t> train,
                                CriterionKind criterion, std::size_t n, std::uint32_t n_bins);

/// Mean pairwise Jaccard index |A & B| / |A | B| over at least two
/// non-empty sets. Duplicates within a set are ignored.
double jaccard_stability(std::span<const FeatureList> sets);

struct MethodResult {
  std::vector<double> accuracies;          // test accuracy per repetition
  std::vector<std::size_t> feature_counts;  // features used per repetition
  std::size_t n_features_used = 0;         // rounded mean of feature_counts
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
  // Mean test accuracy of the first p features (index p - 1), averaged over
  // the repetitions whose sweep reached p.
  std::vector<double> swept_curve;

  bool operator==(const MethodResult&) const = default;
};

/// Fills n_features_used, mean and std from accuracies and feature_counts.
/// Needs at least two accuracies.
void summarize(MethodResult& result);

struct ComparisonEntry {
  std::string dataset;
  CriterionKind criterion = CriterionKind::Fisher;
  MethodResult presented;
  MethodResult conventional;
};

/// The per-dataset "average" column: arithmetic means over criteria.
struct AverageRow {
  std::size_t n_features = 0;
  double mean = 0.0;
  double std = 0.0;
};

struct ExperimentReport {
  std::vector<ComparisonEntry> entries;

  std::vector<std::string> datasets() const;  // first-appearance order
  AverageRow average(const std::string& dataset, bool presented) const;
};

/// Per repetition r: a fresh stratified half split seeded from (seed, r);
/// for every criterion the stable pipeline runs on the train half with a
/// master seed derived from (seed, r), and the baseline gets the same
/// number of features. Both are scored on the test half by naive Bayes fit
/// on the train half. Repetitions run on `tmpl.threads` workers.
ExperimentReport run_comparison(const Dataset& ds, const std::string& dataset_name,
                                std::span<const CriterionKind> criteria, std::size_t repetitions,
                                const HistogramConfig& tmpl, std::uint64_t seed);

}  // namespace stablefs
