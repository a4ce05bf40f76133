#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "stablefs/data.hpp"

namespace stablefs {

/// Stratified fold labels. fold[i] is the fold of the i-th item of the list
/// the assignment was built for.
struct FoldAssignment {
  std::size_t k = 0;
  std::vector<std::size_t> fold;

  bool operator==(const FoldAssignment&) const = default;
};

/// Within each class the members are shuffled and dealt round-robin, with
/// the dealing position carried over from one class to the next, so per-class
/// fold sizes differ by at most one and overall fold sizes as well.
/// Throws std::invalid_argument if k < 2, k > n, or some fold's complement
/// would hold fewer than two classes.
FoldAssignment kfold(std::span<const ClassId> labels, std::size_t k, std::uint64_t seed);

/// Convenience: kfold over the labels of `train`.
FoldAssignment kfold_for(const Dataset& ds, std::span<const std::size_t> train, std::size_t k,
                         std::uint64_t seed);

/// Mean over folds of naive Bayes accuracy, fit out-of-fold on `features`
/// and scored in-fold. `folds` is aligned with `train`.
double cv_accuracy(const Dataset& ds, std::span<const std::size_t> train,
                   std::span<const std::size_t> features, const FoldAssignment& folds);

/// Accuracy on `eval_rows` of naive Bayes fit on `fit_rows` with the first
/// 1, 2, ..., L features of `ordered_features`, L = min(max_len, size).
/// Built incrementally, but entry j equals fit_naive_bayes + accuracy on the
/// (j + 1)-prefix bit for bit.
std::vector<double> holdout_accuracy_curve(const Dataset& ds,
                                           std::span<const std::size_t> fit_rows,
                                           std::span<const std::size_t> eval_rows,
                                           std::span<const std::size_t> ordered_features,
                                           std::size_t max_len);

/// cv_accuracy for every prefix of `ordered_features` up to max_len; entry j
/// equals cv_accuracy on the (j + 1)-prefix bit for bit.
std::vector<double> cv_accuracy_curve(const Dataset& ds, std::span<const std::size_t> train,
                                      std::span<const std::size_t> ordered_features,
                                      const FoldAssignment& folds, std::size_t max_len);

}  // namespace stablefs
