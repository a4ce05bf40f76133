#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "stablefs/data.hpp"

namespace stablefs {

enum class CriterionKind { ChiSquare, Fisher, InfoGain };

inline constexpr CriterionKind kAllCriteria[] = {CriterionKind::ChiSquare, CriterionKind::Fisher,
                                                 CriterionKind::InfoGain};

/// "chisquare", "fisher" or "infogain".
std::string_view to_string(CriterionKind kind);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
CriterionKind parse_criterion(std::string_view name);

/// Denominator floor of the Fisher ratio.
inline constexpr double kFisherEpsilon = 1e-12;

struct RankedFeature {
  std::size_t feature = 0;
  double score = 0.0;

  bool operator==(const RankedFeature&) const = default;
};

/// Features by non-increasing score, equal scores by ascending index.
struct FeatureRanking {
  CriterionKind criterion = CriterionKind::Fisher;
  std::vector<RankedFeature> entries;
};

// The scorers take a column and the labels of the same samples, in the same
// order. All throw std::invalid_argument when fewer than two classes occur.

/// sum_c n_c (mu_c - mu)^2 / max(sum_c n_c var_c, eps), population variances.
/// Exactly 0 when there is no between-class spread.
double fisher_score(std::span<const double> column, std::span<const ClassId> labels);

/// Pearson chi-square of the bin x class contingency table. Cells with zero
/// expectation are skipped.
double chi_square_score(const DiscretizedColumn& column, std::span<const ClassId> labels);

/// H(Y) - H(Y | X) in bits, plug-in estimates, clamped to [0, H(Y)].
double info_gain_score(const DiscretizedColumn& column, std::span<const ClassId> labels);

/// Scores every feature of `ds` over the samples in `rows`. Chi-square and
/// information gain discretize each column over those samples first. Rows
/// are scored in ascending order regardless of the order given, so the
/// result depends only on the set of rows.
FeatureRanking rank_features(const Dataset& ds, std::span<const std::size_t> rows,
                             CriterionKind criterion, std::uint32_t n_bins);

/// The first k features of the ranking. Throws if k exceeds its length.
FeatureList top_k(const FeatureRanking& ranking, std::size_t k);

}  // namespace stablefs
