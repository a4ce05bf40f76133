#include "stablefs/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stablefs/cross_validation.hpp"
#include "stablefs/naive_bayes.hpp"
#include "stablefs/parallel.hpp"
#include "stablefs/random.hpp"

namespace stablefs {

FeatureList conventional_select(const Dataset& ds, std::span<const std::size_t> train,
                                CriterionKind criterion, std::size_t n, std::uint32_t n_bins) {
  if (n > ds.n_features())
    throw std::invalid_argument("cannot select " + std::to_string(n) + " of " +
                                std::to_string(ds.n_features()) + " features");
  return top_k(rank_features(ds, train, criterion, n_bins), n);
}

double jaccard_stability(std::span<const FeatureList> sets) {
  if (sets.size() < 2) throw std::invalid_argument("stability needs at least 2 feature sets");
  std::vector<FeatureList> sorted;
  sorted.reserve(sets.size());
  for (const auto& s : sets) {
    if (s.empty()) throw std::invalid_argument("stability of an empty feature set");
    FeatureList u(s);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    sorted.push_back(std::move(u));
  }
  double total = 0.0;
  std::size_t pairs = 0;
  FeatureList common;
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    for (std::size_t b = a + 1; b < sorted.size(); ++b) {
      common.clear();
      std::set_intersection(sorted[a].begin(), sorted[a].end(), sorted[b].begin(),
                            sorted[b].end(), std::back_inserter(common));
      const std::size_t joint = sorted[a].size() + sorted[b].size() - common.size();
      total += static_cast<double>(common.size()) / static_cast<double>(joint);
      ++pairs;
    }
  }
  return total / static_cast<double>(pairs);
}

void summarize(MethodResult& result) {
  const auto& acc = result.accuracies;
  if (acc.size() < 2) throw std::invalid_argument("summary needs at least 2 repetitions");
  const double n = static_cast<double>(acc.size());
  result.mean = std::accumulate(acc.begin(), acc.end(), 0.0) / n;
  double sq = 0.0;
  for (double a : acc) sq += (a - result.mean) * (a - result.mean);
  result.std = std::sqrt(sq / (n - 1.0));
  double count_sum = 0.0;
  for (std::size_t c : result.feature_counts) count_sum += static_cast<double>(c);
  result.n_features_used =
      result.feature_counts.empty()
          ? 0
          : static_cast<std::size_t>(
                std::lround(count_sum / static_cast<double>(result.feature_counts.size())));
}

std::vector<std::string> ExperimentReport::datasets() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (std::find(out.begin(), out.end(), e.dataset) == out.end()) out.push_back(e.dataset);
  }
  return out;
}

AverageRow ExperimentReport::average(const std::string& dataset, bool presented) const {
  AverageRow row;
  double features = 0.0;
  std::size_t n = 0;
  for (const auto& e : entries) {
    if (e.dataset != dataset) continue;
    const auto& m = presented ? e.presented : e.conventional;
    row.mean += m.mean;
    row.std += m.std;
    features += static_cast<double>(m.n_features_used);
    ++n;
  }
  if (n == 0) throw std::invalid_argument("no report entries for dataset '" + dataset + "'");
  row.mean /= static_cast<double>(n);
  row.std /= static_cast<double>(n);
  row.n_features = static_cast<std::size_t>(std::lround(features / static_cast<double>(n)));
  return row;
}

namespace {

struct RepetitionOutcome {
  double presented_accuracy = 0.0;
  double conventional_accuracy = 0.0;
  std::size_t n_features = 0;
  std::vector<double> presented_curve;
  std::vector<double> conventional_curve;
};

void add_curve(std::vector<double>& sums, std::vector<std::size_t>& counts,
               const std::vector<double>& curve) {
  if (sums.size() < curve.size()) {
    sums.resize(curve.size(), 0.0);
    counts.resize(curve.size(), 0);
  }
  for (std::size_t j = 0; j < curve.size(); ++j) {
    sums[j] += curve[j];
    ++counts[j];
  }
}

std::vector<double> finish_curve(std::vector<double> sums, const std::vector<std::size_t>& counts) {
  for (std::size_t j = 0; j < sums.size(); ++j) sums[j] /= static_cast<double>(counts[j]);
  return sums;
}

}  // namespace

ExperimentReport run_comparison(const Dataset& ds, const std::string& dataset_name,
                                std::span<const CriterionKind> criteria, std::size_t repetitions,
                                const HistogramConfig& tmpl, std::uint64_t seed) {
  if (repetitions < 2) throw std::invalid_argument("comparison needs at least 2 repetitions");
  if (criteria.empty()) throw std::invalid_argument("comparison needs at least one criterion");
  tmpl.validate(ds.n_features());

  const std::size_t n_crit = criteria.size();
  std::vector<RepetitionOutcome> outcomes(repetitions * n_crit);
  parallel_for(repetitions, tmpl.threads, [&](std::size_t r) {
    const auto split = split_equal(ds, derive_seed(seed, SeedStream::Split, r));
    for (std::size_t c = 0; c < n_crit; ++c) {
      HistogramConfig cfg = tmpl;
      cfg.criterion = criteria[c];
      cfg.master_seed = derive_seed(seed, SeedStream::Repetition, r);
      cfg.threads = 1;
      const auto sel = select(ds, split.train, cfg);

      auto& out = outcomes[r * n_crit + c];
      out.n_features = sel.stable_features.size();
      out.presented_accuracy =
          accuracy(fit_naive_bayes(ds, split.train, sel.stable_features), ds, split.test);
      const auto baseline =
          conventional_select(ds, split.train, cfg.criterion, out.n_features, cfg.n_bins);
      out.conventional_accuracy =
          accuracy(fit_naive_bayes(ds, split.train, baseline), ds, split.test);

      const std::size_t swept = std::min(sel.histogram.n_nonzero(), cfg.curve_cap);
      out.presented_curve = holdout_accuracy_curve(ds, split.train, split.test,
                                                   std::span(sel.histogram.order.data(), swept),
                                                   swept);
      const auto full = conventional_select(ds, split.train, cfg.criterion,
                                            std::min(ds.n_features(), cfg.curve_cap), cfg.n_bins);
      out.conventional_curve =
          holdout_accuracy_curve(ds, split.train, split.test, full, full.size());
    }
  });

  ExperimentReport report;
  for (std::size_t c = 0; c < n_crit; ++c) {
    ComparisonEntry entry;
    entry.dataset = dataset_name;
    entry.criterion = criteria[c];
    std::vector<double> p_sum, c_sum;
    std::vector<std::size_t> p_cnt, c_cnt;
    for (std::size_t r = 0; r < repetitions; ++r) {
      const auto& o = outcomes[r * n_crit + c];
      entry.presented.accuracies.push_back(o.presented_accuracy);
      entry.presented.feature_counts.push_back(o.n_features);
      entry.conventional.accuracies.push_back(o.conventional_accuracy);
      entry.conventional.feature_counts.push_back(o.n_features);
      add_curve(p_sum, p_cnt, o.presented_curve);
      add_curve(c_sum, c_cnt, o.conventional_curve);
    }
    summarize(entry.presented);
    summarize(entry.conventional);
    entry.presented.swept_curve = finish_curve(std::move(p_sum), p_cnt);
    entry.conventional.swept_curve = finish_curve(std::move(c_sum), c_cnt);
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace stablefs
