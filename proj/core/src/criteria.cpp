#include "stablefs/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stablefs {

std::string_view to_string(CriterionKind kind) {
  switch (kind) {
    case CriterionKind::ChiSquare: return "chisquare";
    case CriterionKind::Fisher: return "fisher";
    case CriterionKind::InfoGain: return "infogain";
  }
  return "unknown";
}

CriterionKind parse_criterion(std::string_view name) {
  for (CriterionKind kind : kAllCriteria) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown criterion '" + std::string(name) +
                              "' (expected chisquare, fisher or infogain)");
}

namespace {

std::vector<std::size_t> tally_classes(std::span<const ClassId> labels) {
  ClassId max_class = 0;
  for (ClassId c : labels) max_class = std::max(max_class, c);
  std::vector<std::size_t> counts(labels.empty() ? 0 : max_class + 1, 0);
  for (ClassId c : labels) ++counts[c];
  const auto present = std::count_if(counts.begin(), counts.end(),
                                     [](std::size_t n) { return n > 0; });
  if (present < 2) throw std::invalid_argument("criterion needs at least 2 classes");
  return counts;
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("column and labels differ in length");
}

// Row-major bins x classes table of observed counts.
struct Contingency {
  std::size_t n_bins;
  std::size_t n_classes;
  std::vector<std::size_t> cells;
  std::vector<std::size_t> bin_totals;
  std::vector<std::size_t> class_totals;
};

Contingency contingency(const DiscretizedColumn& column, std::span<const ClassId> labels) {
  check_lengths(column.bins.size(), labels.size());
  Contingency t;
  t.class_totals = tally_classes(labels);
  t.n_classes = t.class_totals.size();
  t.n_bins = column.n_bins;
  t.cells.assign(t.n_bins * t.n_classes, 0);
  t.bin_totals.assign(t.n_bins, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t b = column.bins[i];
    if (b >= t.n_bins) throw std::invalid_argument("bin index out of range");
    ++t.cells[b * t.n_classes + labels[i]];
    ++t.bin_totals[b];
  }
  return t;
}

double entropy_bits(std::span<const std::size_t> counts, std::size_t total) {
  double h = 0.0;
  const double n = static_cast<double>(total);
  for (std::size_t k : counts) {
    if (k == 0) continue;
    const double p = static_cast<double>(k) / n;
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double fisher_score(std::span<const double> column, std::span<const ClassId> labels) {
  check_lengths(column.size(), labels.size());
  const auto counts = tally_classes(labels);
  const std::size_t n_classes = counts.size();

  // Shift by the first value: a constant column becomes exactly zero, so the
  // numerator is exactly zero as well.
  const double shift = column.empty() ? 0.0 : column[0];
  std::vector<double> sums(n_classes, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const double x = column[i] - shift;
    sums[labels[i]] += x;
    total += x;
  }
  const double mean = total / static_cast<double>(column.size());

  std::vector<double> means(n_classes, 0.0);
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (counts[c] > 0) means[c] = sums[c] / static_cast<double>(counts[c]);
  }
  std::vector<double> sq(n_classes, 0.0);
  for (std::size_t i = 0; i < column.size(); ++i) {
    const double d = (column[i] - shift) - means[labels[i]];
    sq[labels[i]] += d * d;
  }

  double between = 0.0;
  double within = 0.0;
  for (std::size_t c = 0; c < n_classes; ++c) {
    if (counts[c] == 0) continue;
    const double d = means[c] - mean;
    between += static_cast<double>(counts[c]) * d * d;
    within += sq[c];  // n_c * (sq_c / n_c)
  }
  if (between == 0.0) return 0.0;
  return between / std::max(within, kFisherEpsilon);
}

double chi_square_score(const DiscretizedColumn& column, std::span<const ClassId> labels) {
  const auto t = contingency(column, labels);
  const double n = static_cast<double>(labels.size());
  double chi2 = 0.0;
  for (std::size_t b = 0; b < t.n_bins; ++b) {
    if (t.bin_totals[b] == 0) continue;
    for (std::size_t c = 0; c < t.n_classes; ++c) {
      if (t.class_totals[c] == 0) continue;
      const double expected =
          static_cast<double>(t.bin_totals[b]) * static_cast<double>(t.class_totals[c]) / n;
      const double diff = static_cast<double>(t.cells[b * t.n_classes + c]) - expected;
      chi2 += diff * diff / expected;
    }
  }
  return chi2;
}

double info_gain_score(const DiscretizedColumn& column, std::span<const ClassId> labels) {
  const auto t = contingency(column, labels);
  const std::size_t n = labels.size();
  const double h_y = entropy_bits(t.class_totals, n);
  double h_y_given_x = 0.0;
  for (std::size_t b = 0; b < t.n_bins; ++b) {
    if (t.bin_totals[b] == 0) continue;
    const std::span<const std::size_t> row(t.cells.data() + b * t.n_classes, t.n_classes);
    h_y_given_x += static_cast<double>(t.bin_totals[b]) / static_cast<double>(n) *
                   entropy_bits(row, t.bin_totals[b]);
  }
  return std::clamp(h_y - h_y_given_x, 0.0, h_y);
}

FeatureRanking rank_features(const Dataset& ds, std::span<const std::size_t> rows,
                             CriterionKind criterion, std::uint32_t n_bins) {
  SampleList sorted(rows.begin(), rows.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t r : sorted) {
    if (r >= ds.n_samples()) throw std::out_of_range("sample index out of range");
  }

  std::vector<ClassId> labels(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) labels[i] = ds.labels()[sorted[i]];
  tally_classes(labels);

  FeatureRanking ranking;
  ranking.criterion = criterion;
  ranking.entries.resize(ds.n_features());
  std::vector<double> values(sorted.size());
  for (std::size_t f = 0; f < ds.n_features(); ++f) {
    const auto column = ds.column(f);
    for (std::size_t i = 0; i < sorted.size(); ++i) values[i] = column[sorted[i]];
    double score = 0.0;
    switch (criterion) {
      case CriterionKind::Fisher:
        score = fisher_score(values, labels);
        break;
      case CriterionKind::ChiSquare:
        score = chi_square_score(discretize_column(values, n_bins), labels);
        break;
      case CriterionKind::InfoGain:
        score = info_gain_score(discretize_column(values, n_bins), labels);
        break;
    }
    ranking.entries[f] = {f, score};
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const RankedFeature& a, const RankedFeature& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.feature < b.feature;
            });
  return ranking;
}

FeatureList top_k(const FeatureRanking& ranking, std::size_t k) {
  if (k > ranking.entries.size())
    throw std::invalid_argument("top_k: k = " + std::to_string(k) + " exceeds " +
                                std::to_string(ranking.entries.size()) + " features");
  FeatureList out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = ranking.entries[i].feature;
  return out;
}

}  // namespace stablefs
