#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stablefs/data.hpp"

namespace stablefs {

/// Relative variance floor: class variances are floored at
/// kVarSmoothing * max(1, largest per-feature variance of the fit view).
inline constexpr double kVarSmoothing = 1e-9;

/// Gaussian naive Bayes over a feature subset. Only classes present in the
/// fit view are kept, in class-id order.
struct NaiveBayesModel {
  std::vector<ClassId> classes;
  std::vector<double> class_priors;
  FeatureList feature_subset;
  // classes.size() x feature_subset.size(), row-major by class.
  std::vector<double> class_means;
  std::vector<double> class_variances;
  double variance_floor = 0.0;

  std::size_t n_features() const noexcept { return feature_subset.size(); }
  double mean(std::size_t c, std::size_t j) const { return class_means[c * n_features() + j]; }
  double variance(std::size_t c, std::size_t j) const {
    return class_variances[c * n_features() + j];
  }
};

/// Per-class mean and population variance of one feature over a sample set,
/// plus the variance over all of those samples. Shared by the model fit and
/// the incremental CV evaluators so both produce identical numbers.
struct FeatureClassStats {
  std::vector<double> means;      // indexed by slot
  std::vector<double> variances;  // unfloored
  double overall_variance = 0.0;
};

/// `slot_of[label]` maps a class id to a dense slot < n_slots.
FeatureClassStats feature_class_stats(std::span<const double> column,
                                      std::span<const std::size_t> rows,
                                      std::span<const ClassId> labels,
                                      std::span<const std::size_t> slot_of, std::size_t n_slots);

double variance_floor(double max_overall_variance);

double gaussian_log_density(double x, double mean, double variance);

/// Throws std::invalid_argument for an empty feature subset or a view with
/// fewer than two classes.
NaiveBayesModel fit_naive_bayes(const Dataset& ds, std::span<const std::size_t> rows,
                                std::span<const std::size_t> features);

/// `sample` is a full feature row of the dataset the model was fit on.
/// Argmax of log prior plus summed log densities; ties go to the earlier class.
ClassId predict(const NaiveBayesModel& model, std::span<const double> sample);

ClassId predict_row(const NaiveBayesModel& model, const Dataset& ds, std::size_t row);

/// Fraction of `rows` predicted correctly. Throws on an empty view.
double accuracy(const NaiveBayesModel& model, const Dataset& ds,
                std::span<const std::size_t> rows);

}  // namespace stablefs
