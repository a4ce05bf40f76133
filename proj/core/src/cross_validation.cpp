#include "stablefs/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stablefs/naive_bayes.hpp"
#include "stablefs/random.hpp"

namespace stablefs {

FoldAssignment kfold(std::span<const ClassId> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("cross-validation needs at least 2 folds");
  if (k > labels.size())
    throw std::invalid_argument("cannot make " + std::to_string(k) + " folds from " +
                                std::to_string(labels.size()) + " samples");
  ClassId max_class = 0;
  for (ClassId c : labels) max_class = std::max(max_class, c);
  std::vector<std::vector<std::size_t>> groups(max_class + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);

  Rng rng(seed);
  FoldAssignment out{k, std::vector<std::size_t>(labels.size(), 0)};
  std::size_t deal = 0;
  for (auto& members : groups) {
    rng.shuffle(std::span(members));
    for (std::size_t i : members) out.fold[i] = deal++ % k;
  }

  // Classes present outside each fold.
  std::vector<std::vector<std::size_t>> per_fold(k, std::vector<std::size_t>(groups.size(), 0));
  for (std::size_t i = 0; i < labels.size(); ++i) ++per_fold[out.fold[i]][labels[i]];
  for (std::size_t f = 0; f < k; ++f) {
    std::size_t outside = 0;
    for (std::size_t c = 0; c < groups.size(); ++c)
      outside += groups[c].size() > per_fold[f][c] ? 1 : 0;
    if (outside < 2)
      throw std::invalid_argument("fold " + std::to_string(f) +
                                  " leaves fewer than 2 classes for training");
  }
  return out;
}

FoldAssignment kfold_for(const Dataset& ds, std::span<const std::size_t> train, std::size_t k,
                         std::uint64_t seed) {
  std::vector<ClassId> labels(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) labels[i] = ds.labels()[train[i]];
  return kfold(labels, k, seed);
}

namespace {

struct FoldRows {
  SampleList fit;
  SampleList eval;
};

std::vector<FoldRows> fold_rows(std::span<const std::size_t> train, const FoldAssignment& folds) {
  if (folds.fold.size() != train.size())
    throw std::invalid_argument("fold assignment does not match the training list");
  std::vector<FoldRows> out(folds.k);
  for (std::size_t i = 0; i < train.size(); ++i) {
    for (std::size_t f = 0; f < folds.k; ++f) {
      if (folds.fold[i] == f)
        out[f].eval.push_back(train[i]);
      else
        out[f].fit.push_back(train[i]);
    }
  }
  return out;
}

}  // namespace

double cv_accuracy(const Dataset& ds, std::span<const std::size_t> train,
                   std::span<const std::size_t> features, const FoldAssignment& folds) {
  if (features.empty()) throw std::invalid_argument("cross-validation needs a feature");
  double total = 0.0;
  for (const auto& rows : fold_rows(train, folds)) {
    const auto model = fit_naive_bayes(ds, rows.fit, features);
    total += accuracy(model, ds, rows.eval);
  }
  return total / static_cast<double>(folds.k);
}

std::vector<double> holdout_accuracy_curve(const Dataset& ds,
                                           std::span<const std::size_t> fit_rows,
                                           std::span<const std::size_t> eval_rows,
                                           std::span<const std::size_t> ordered_features,
                                           std::size_t max_len) {
  if (eval_rows.empty()) throw std::invalid_argument("accuracy of an empty view is undefined");
  if (fit_rows.empty()) throw std::invalid_argument("naive Bayes needs at least one sample");
  const std::size_t len = std::min(max_len, ordered_features.size());

  std::vector<std::size_t> counts(ds.n_classes(), 0);
  for (std::size_t r : fit_rows) ++counts[ds.labels()[r]];
  std::vector<std::size_t> slot_of(ds.n_classes(), 0);
  std::vector<ClassId> slot_class;
  std::vector<double> log_prior;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    slot_of[c] = slot_class.size();
    slot_class.push_back(static_cast<ClassId>(c));
    // Same expression as the model fit, then log, so scores match bitwise.
    const double prior = static_cast<double>(counts[c]) / static_cast<double>(fit_rows.size());
    log_prior.push_back(std::log(prior));
  }
  if (slot_class.size() < 2) throw std::invalid_argument("naive Bayes needs at least 2 classes");
  const std::size_t n_cls = slot_class.size();
  const std::size_t n_eval = eval_rows.size();

  std::vector<double> scores(n_eval * n_cls);
  auto reset_scores = [&] {
    for (std::size_t e = 0; e < n_eval; ++e)
      for (std::size_t k = 0; k < n_cls; ++k) scores[e * n_cls + k] = log_prior[k];
  };
  reset_scores();

  std::vector<FeatureClassStats> stats;
  stats.reserve(len);
  double max_var = 0.0;
  double floor = variance_floor(0.0);
  double min_raw = std::numeric_limits<double>::infinity();

  auto add_feature = [&](std::size_t j) {
    const auto column = ds.column(ordered_features[j]);
    const auto& s = stats[j];
    for (std::size_t e = 0; e < n_eval; ++e) {
      const double x = column[eval_rows[e]];
      for (std::size_t k = 0; k < n_cls; ++k)
        scores[e * n_cls + k] +=
            gaussian_log_density(x, s.means[k], std::max(s.variances[k], floor));
    }
  };

  std::vector<double> curve(len);
  for (std::size_t j = 0; j < len; ++j) {
    const std::size_t f = ordered_features[j];
    if (f >= ds.n_features()) throw std::out_of_range("feature index out of range");
    stats.push_back(feature_class_stats(ds.column(f), fit_rows, ds.labels(), slot_of, n_cls));
    max_var = std::max(max_var, stats.back().overall_variance);
    const double new_floor = variance_floor(max_var);
    const bool stale = new_floor != floor && min_raw < new_floor;
    floor = new_floor;
    if (stale) {
      reset_scores();
      for (std::size_t i = 0; i <= j; ++i) add_feature(i);
    } else {
      add_feature(j);
    }
    for (double v : stats.back().variances) min_raw = std::min(min_raw, v);

    std::size_t correct = 0;
    for (std::size_t e = 0; e < n_eval; ++e) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < n_cls; ++k) {
        if (scores[e * n_cls + k] > scores[e * n_cls + best]) best = k;
      }
      correct += slot_class[best] == ds.labels()[eval_rows[e]] ? 1 : 0;
    }
    curve[j] = static_cast<double>(correct) / static_cast<double>(n_eval);
  }
  return curve;
}

std::vector<double> cv_accuracy_curve(const Dataset& ds, std::span<const std::size_t> train,
                                      std::span<const std::size_t> ordered_features,
                                      const FoldAssignment& folds, std::size_t max_len) {
  const std::size_t len = std::min(max_len, ordered_features.size());
  std::vector<double> total(len, 0.0);
  for (const auto& rows : fold_rows(train, folds)) {
    const auto acc = holdout_accuracy_curve(ds, rows.fit, rows.eval, ordered_features, len);
    for (std::size_t j = 0; j < len; ++j) total[j] += acc[j];
  }
  for (double& t : total) t /= static_cast<double>(folds.k);
  return total;
}

}  // namespace stablefs
