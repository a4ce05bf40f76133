#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace stablefs {

using ClassId = std::uint32_t;
using SampleList = std::vector<std::size_t>;
using FeatureList = std::vector<std::size_t>;

/// Dense samples x features matrix with class labels.
///
/// Values are stored feature-major so that a feature column is contiguous;
/// every filter criterion and the naive Bayes fit walk one column at a time.
/// Immutable once constructed.
class Dataset {
 public:
  /// `columns[f][i]` is the value of feature f for sample i. Labels index
  /// into `class_names`. Throws std::invalid_argument on any violated
  /// invariant (shape mismatch, non-finite value, duplicate feature name,
  /// empty class, fewer than two samples).
  Dataset(std::vector<std::vector<double>> columns, std::vector<ClassId> labels,
          std::vector<std::string> feature_names, std::vector<std::string> class_names);

  std::size_t n_samples() const noexcept { return labels_.size(); }
  std::size_t n_features() const noexcept { return feature_names_.size(); }
  std::size_t n_classes() const noexcept { return class_names_.size(); }

  std::span<const double> column(std::size_t feature) const {
    return {values_.data() + feature * n_samples(), n_samples()};
  }
  double value(std::size_t sample, std::size_t feature) const {
    return values_[feature * n_samples() + sample];
  }

  std::span<const ClassId> labels() const noexcept { return labels_; }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }

  /// Number of samples of each class.
  std::vector<std::size_t> class_counts() const;

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<double> values_;
  std::vector<ClassId> labels_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
};

struct SplitIndices {
  SampleList train;
  SampleList test;
};

struct DiscretizedColumn {
  std::vector<std::uint32_t> bins;
  std::uint32_t n_bins = 1;
  std::vector<double> edges;  // n_bins - 1 ascending cut points
};

/// Reads a header-first CSV. Lines starting with '#' before the header are
/// metadata and skipped. Class names are recorded in order of first
/// appearance. Throws std::runtime_error with row/column context.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column);

/// Stratified half split: floor(n_c / 2) of each class goes to train, the
/// rest to test. Both lists are returned in ascending sample order.
SplitIndices split_equal(const Dataset& ds, std::uint64_t seed);

/// Stratified sample without replacement of max(1, round(fraction * n_c))
/// indices per class present in `train`. Returned sorted ascending.
SampleList subsample(std::span<const std::size_t> train, std::span<const ClassId> labels,
                     double fraction, std::uint64_t seed);

/// Equal-width binning between the column min and max. A constant column
/// collapses to one bin; the maximum lands in the top bin.
DiscretizedColumn discretize_column(std::span<const double> column, std::uint32_t n_bins);

struct SyntheticDataset {
  Dataset data;
  FeatureList informative;  // ascending
};

/// Two balanced classes. Informative features are N(-s/2, 1) for the first
/// class and N(+s/2, 1) for the second; the rest are N(0, 1) noise.
SyntheticDataset make_synthetic(std::size_t n_samples, std::size_t n_features,
                                std::size_t n_informative, double class_separation,
                                std::uint64_t seed);

}  // namespace stablefs
