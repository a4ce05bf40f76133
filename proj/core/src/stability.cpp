#include "stablefs/stability.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "stablefs/parallel.hpp"
#include "stablefs/random.hpp"

namespace stablefs {

void HistogramConfig::validate(std::size_t n_features) const {
  if (rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  if (!(subset_fraction > 0.0 && subset_fraction <= 1.0))
    throw std::invalid_argument("subset fraction must lie in (0, 1]");
  if (per_round_k < 1) throw std::invalid_argument("per-round k must be at least 1");
  if (per_round_k > n_features)
    throw std::invalid_argument("per-round k = " + std::to_string(per_round_k) + " exceeds " +
                                std::to_string(n_features) + " features");
  if (n_bins < 2) throw std::invalid_argument("bins must be at least 2");
  if (cv_folds < 2) throw std::invalid_argument("folds must be at least 2");
  if (curve_cap < 1) throw std::invalid_argument("curve cap must be at least 1");
}

std::size_t FeatureHistogram::n_nonzero() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
}

FeatureHistogram accumulate_histogram(std::size_t n_features, std::size_t rounds,
                                      std::size_t per_round_k, const RoundSelector& select_round,
                                      unsigned threads) {
  std::vector<FeatureList> tops(rounds);
  parallel_for(rounds, threads, [&](std::size_t r) { tops[r] = select_round(r); });

  FeatureHistogram h;
  h.rounds = rounds;
  h.per_round_k = per_round_k;
  h.counts.assign(n_features, 0);
  std::vector<std::size_t> last_seen(n_features, rounds);
  for (std::size_t r = 0; r < rounds; ++r) {
    if (tops[r].size() != per_round_k)
      throw std::logic_error("round " + std::to_string(r) + " returned " +
                             std::to_string(tops[r].size()) + " features, expected " +
                             std::to_string(per_round_k));
    for (std::size_t f : tops[r]) {
      if (f >= n_features) throw std::out_of_range("round selected a feature out of range");
      if (last_seen[f] == r) throw std::logic_error("round selected a feature twice");
      last_seen[f] = r;
      ++h.counts[f];
    }
  }

  const double total = static_cast<double>(h.total());
  h.weights.resize(n_features);
  for (std::size_t f = 0; f < n_features; ++f)
    h.weights[f] = static_cast<double>(h.counts[f]) / total;

  h.order.resize(n_features);
  std::iota(h.order.begin(), h.order.end(), std::size_t{0});
  std::stable_sort(h.order.begin(), h.order.end(), [&](std::size_t a, std::size_t b) {
    return h.counts[a] > h.counts[b];
  });
  return h;
}

FeatureHistogram build_histogram(const Dataset& ds, std::span<const std::size_t> train,
                                 const HistogramConfig& cfg) {
  cfg.validate(ds.n_features());
  auto round = [&](std::size_t r) {
    const auto seed = derive_seed(cfg.master_seed, SeedStream::HistogramRound, r);
    const auto subset = subsample(train, ds.labels(), cfg.subset_fraction, seed);
    return top_k(rank_features(ds, subset, cfg.criterion, cfg.n_bins), cfg.per_round_k);
  };
  return accumulate_histogram(ds.n_features(), cfg.rounds, cfg.per_round_k, round, cfg.threads);
}

double cumulative_area(const FeatureHistogram& hist, std::size_t prefix_len) {
  if (prefix_len > hist.order.size())
    throw std::out_of_range("prefix length " + std::to_string(prefix_len) + " exceeds " +
                            std::to_string(hist.order.size()) + " features");
  double area = 0.0;
  for (std::size_t i = 0; i < prefix_len; ++i) area += hist.weights[hist.order[i]];
  return area;
}

ThresholdChoice select_threshold(const FeatureHistogram& hist, std::size_t curve_cap,
                                 const PrefixCurveEvaluator& evaluate) {
  const std::size_t len = std::min(hist.n_nonzero(), curve_cap);
  if (len == 0) throw std::invalid_argument("histogram has no nonzero-count features");
  const std::span<const std::size_t> candidates(hist.order.data(), len);
  const auto accuracies = evaluate(candidates, len);
  if (accuracies.size() != len)
    throw std::logic_error("prefix evaluator returned " + std::to_string(accuracies.size()) +
                           " accuracies, expected " + std::to_string(len));

  ThresholdChoice out;
  out.curve.reserve(len);
  double area = 0.0;
  std::size_t best = 0;
  for (std::size_t j = 0; j < len; ++j) {
    area += hist.weights[hist.order[j]];
    out.curve.push_back({j + 1, area, accuracies[j]});
    if (accuracies[j] > accuracies[best]) best = j;
  }
  out.best_prefix_len = best + 1;
  out.threshold = out.curve[best].cumulative_area;
  return out;
}

FoldAssignment selection_folds(const Dataset& ds, std::span<const std::size_t> train,
                               const HistogramConfig& cfg) {
  return kfold_for(ds, train, cfg.cv_folds, derive_seed(cfg.master_seed, SeedStream::CvFolds, 0));
}

ThresholdChoice select_threshold(const Dataset& ds, std::span<const std::size_t> train,
                                 const FeatureHistogram& hist, const HistogramConfig& cfg) {
  const auto folds = selection_folds(ds, train, cfg);
  return select_threshold(hist, cfg.curve_cap,
                          [&](std::span<const std::size_t> ordered, std::size_t max_len) {
                            return cv_accuracy_curve(ds, train, ordered, folds, max_len);
                          });
}

namespace {

RankedFeatures rank_with_folds(const Dataset& ds, std::span<const std::size_t> train,
                               std::span<const std::size_t> stable_prefix,
                               const FoldAssignment& folds) {
  if (stable_prefix.empty()) throw std::invalid_argument("stable prefix is empty");
  std::vector<double> acc(stable_prefix.size());
  for (std::size_t i = 0; i < stable_prefix.size(); ++i) {
    const std::size_t f = stable_prefix[i];
    acc[i] = cv_accuracy(ds, train, std::span(&f, 1), folds);
  }
  std::vector<std::size_t> perm(stable_prefix.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return acc[a] > acc[b]; });
  RankedFeatures out;
  for (std::size_t i : perm) {
    out.features.push_back(stable_prefix[i]);
    out.cv_accuracy.push_back(acc[i]);
  }
  return out;
}

}  // namespace

RankedFeatures rank_stable_features(const Dataset& ds, std::span<const std::size_t> train,
                                    std::span<const std::size_t> stable_prefix,
                                    const HistogramConfig& cfg) {
  return rank_with_folds(ds, train, stable_prefix, selection_folds(ds, train, cfg));
}

SelectionResult select(const Dataset& ds, std::span<const std::size_t> train,
                       const HistogramConfig& cfg) {
  SelectionResult out;
  out.histogram = build_histogram(ds, train, cfg);
  const auto folds = selection_folds(ds, train, cfg);
  auto choice = select_threshold(out.histogram, cfg.curve_cap,
                                 [&](std::span<const std::size_t> ordered, std::size_t max_len) {
                                   return cv_accuracy_curve(ds, train, ordered, folds, max_len);
                                 });
  out.threshold = choice.threshold;
  out.best_prefix_len = choice.best_prefix_len;
  out.accuracy_curve = std::move(choice.curve);

  const std::span<const std::size_t> prefix(out.histogram.order.data(), out.best_prefix_len);
  auto ranked = rank_with_folds(ds, train, prefix, folds);
  out.stable_features = std::move(ranked.features);
  out.per_feature_cv = std::move(ranked.cv_accuracy);
  return out;
}

}  // namespace stablefs
