#include "stablefs/naive_bayes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace stablefs {

FeatureClassStats feature_class_stats(std::span<const double> column,
                                      std::span<const std::size_t> rows,
                                      std::span<const ClassId> labels,
                                      std::span<const std::size_t> slot_of, std::size_t n_slots) {
  FeatureClassStats s;
  s.means.assign(n_slots, 0.0);
  s.variances.assign(n_slots, 0.0);
  std::vector<std::size_t> counts(n_slots, 0);
  double total = 0.0;
  for (std::size_t r : rows) {
    const std::size_t slot = slot_of[labels[r]];
    s.means[slot] += column[r];
    ++counts[slot];
    total += column[r];
  }
  for (std::size_t k = 0; k < n_slots; ++k) {
    if (counts[k] > 0) s.means[k] /= static_cast<double>(counts[k]);
  }
  const double overall_mean = total / static_cast<double>(rows.size());
  double overall_sq = 0.0;
  for (std::size_t r : rows) {
    const std::size_t slot = slot_of[labels[r]];
    const double d = column[r] - s.means[slot];
    s.variances[slot] += d * d;
    const double g = column[r] - overall_mean;
    overall_sq += g * g;
  }
  for (std::size_t k = 0; k < n_slots; ++k) {
    if (counts[k] > 0) s.variances[k] /= static_cast<double>(counts[k]);
  }
  s.overall_variance = overall_sq / static_cast<double>(rows.size());
  return s;
}

double variance_floor(double max_overall_variance) {
  return kVarSmoothing * std::max(max_overall_variance, 1.0);
}

double gaussian_log_density(double x, double mean, double variance) {
  const double d = x - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * variance) - d * d / (2.0 * variance);
}

NaiveBayesModel fit_naive_bayes(const Dataset& ds, std::span<const std::size_t> rows,
                                std::span<const std::size_t> features) {
  if (features.empty()) throw std::invalid_argument("naive Bayes needs at least one feature");
  if (rows.empty()) throw std::invalid_argument("naive Bayes needs at least one sample");
  for (std::size_t f : features) {
    if (f >= ds.n_features()) throw std::out_of_range("feature index out of range");
  }

  std::vector<std::size_t> counts(ds.n_classes(), 0);
  for (std::size_t r : rows) {
    if (r >= ds.n_samples()) throw std::out_of_range("sample index out of range");
    ++counts[ds.labels()[r]];
  }

  NaiveBayesModel m;
  std::vector<std::size_t> slot_of(ds.n_classes(), 0);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0) continue;
    slot_of[c] = m.classes.size();
    m.classes.push_back(static_cast<ClassId>(c));
    m.class_priors.push_back(static_cast<double>(counts[c]) / static_cast<double>(rows.size()));
  }
  if (m.classes.size() < 2) throw std::invalid_argument("naive Bayes needs at least 2 classes");

  const std::size_t n_cls = m.classes.size();
  const std::size_t n_feat = features.size();
  m.feature_subset.assign(features.begin(), features.end());
  m.class_means.assign(n_cls * n_feat, 0.0);
  m.class_variances.assign(n_cls * n_feat, 0.0);

  double max_var = 0.0;
  for (std::size_t j = 0; j < n_feat; ++j) {
    const auto s = feature_class_stats(ds.column(features[j]), rows, ds.labels(), slot_of, n_cls);
    for (std::size_t k = 0; k < n_cls; ++k) {
      m.class_means[k * n_feat + j] = s.means[k];
      m.class_variances[k * n_feat + j] = s.variances[k];
    }
    max_var = std::max(max_var, s.overall_variance);
  }
  m.variance_floor = variance_floor(max_var);
  for (double& v : m.class_variances) v = std::max(v, m.variance_floor);
  return m;
}

namespace {

template <typename ValueAt>
ClassId argmax_class(const NaiveBayesModel& model, ValueAt&& value_at) {
  std::size_t best = 0;
  double best_score = 0.0;
  for (std::size_t k = 0; k < model.classes.size(); ++k) {
    double score = std::log(model.class_priors[k]);
    for (std::size_t j = 0; j < model.n_features(); ++j)
      score += gaussian_log_density(value_at(j), model.mean(k, j), model.variance(k, j));
    if (k == 0 || score > best_score) {
      best = k;
      best_score = score;
    }
  }
  return model.classes[best];
}

}  // namespace

ClassId predict(const NaiveBayesModel& model, std::span<const double> sample) {
  for (std::size_t f : model.feature_subset) {
    if (f >= sample.size())
      throw std::invalid_argument("sample has " + std::to_string(sample.size()) +
                                  " values; model uses feature " + std::to_string(f));
  }
  return argmax_class(model, [&](std::size_t j) { return sample[model.feature_subset[j]]; });
}

ClassId predict_row(const NaiveBayesModel& model, const Dataset& ds, std::size_t row) {
  return argmax_class(model,
                      [&](std::size_t j) { return ds.value(row, model.feature_subset[j]); });
}

double accuracy(const NaiveBayesModel& model, const Dataset& ds,
                std::span<const std::size_t> rows) {
  if (rows.empty()) throw std::invalid_argument("accuracy of an empty view is undefined");
  std::size_t correct = 0;
  for (std::size_t r : rows) correct += predict_row(model, ds, r) == ds.labels()[r] ? 1 : 0;
  return static_cast<double>(correct) / static_cast<double>(rows.size());
}

}  // namespace stablefs
