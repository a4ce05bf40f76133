#include <doctest.h>

#include <cmath>

#include "stablefs/comparison.hpp"
#include "stablefs/random.hpp"
#include "test_helpers.hpp"

using namespace stablefs;

TEST_CASE("jaccard_stability") {
  const std::vector<FeatureList> same = {{1, 2, 3}, {3, 2, 1}};
  CHECK(jaccard_stability(same) == 1.0);
  const std::vector<FeatureList> disjoint = {{1, 2}, {3, 4}};
  CHECK(jaccard_stability(disjoint) == 0.0);
  const std::vector<FeatureList> half = {{1, 2, 3}, {2, 3, 4}};
  CHECK(jaccard_stability(half) == doctest::Approx(0.5));
  // Pairs: 0.5, 1.0, 0.5.
  const std::vector<FeatureList> three = {{1, 2, 3}, {2, 3, 4}, {1, 2, 3}};
  CHECK(jaccard_stability(three) == doctest::Approx((0.5 + 1.0 + 0.5) / 3));
  const std::vector<FeatureList> dups = {{1, 1, 2}, {2, 1}};
  CHECK(jaccard_stability(dups) == 1.0);

  const std::vector<FeatureList> one = {{1}};
  CHECK_THROWS(jaccard_stability(one));
  const std::vector<FeatureList> with_empty = {{1}, {}};
  CHECK_THROWS(jaccard_stability(with_empty));
}

TEST_CASE("conventional_select") {
  const auto ds = testing::make_dataset(
      {{0, 1, 0, 1, 0, 1}, {0, 0, 0, 5, 5, 5}, {0, 0.2, 0.1, 1, 1.3, 0.9}}, {0, 0, 0, 1, 1, 1});
  const auto rows = testing::all_rows(ds);
  CHECK(conventional_select(ds, rows, CriterionKind::Fisher, 2, 10) == FeatureList{1, 2});
  CHECK(conventional_select(ds, rows, CriterionKind::Fisher, 0, 10).empty());
  CHECK_THROWS(conventional_select(ds, rows, CriterionKind::Fisher, 4, 10));
  for (auto kind : kAllCriteria)
    CHECK(conventional_select(ds, rows, kind, 3, 10) ==
          top_k(rank_features(ds, rows, kind, 10), 3));
}

TEST_CASE("summarize") {
  MethodResult m;
  m.accuracies = {0.8, 0.9, 1.0};
  m.feature_counts = {2, 3, 3};
  summarize(m);
  CHECK(m.mean == doctest::Approx(0.9));
  CHECK(m.std == doctest::Approx(0.1));  // sample standard deviation
  CHECK(m.n_features_used == 3);         // round(8 / 3)

  MethodResult single;
  single.accuracies = {0.5};
  CHECK_THROWS(summarize(single));
}

TEST_CASE("report averages") {
  ExperimentReport rep;
  for (int i = 0; i < 3; ++i) {
    ComparisonEntry e;
    e.dataset = i < 2 ? "a" : "b";
    e.presented.mean = 0.7 + 0.1 * i;
    e.presented.std = 0.01 * (i + 1);
    e.presented.n_features_used = static_cast<std::size_t>(4 + i);
    e.conventional.mean = 0.5;
    rep.entries.push_back(e);
  }
  CHECK(rep.datasets() == std::vector<std::string>{"a", "b"});
  const auto a = rep.average("a", true);
  CHECK(a.mean == doctest::Approx(0.75));
  CHECK(a.std == doctest::Approx(0.015));
  CHECK(a.n_features == 5);  // round(4.5), away from zero
  CHECK(rep.average("a", false).mean == doctest::Approx(0.5));
  CHECK_THROWS(rep.average("missing", true));
}

TEST_CASE("run_comparison") {
  const auto syn = make_synthetic(60, 40, 4, 2.0, 33);
  HistogramConfig tmpl;
  tmpl.rounds = 10;
  tmpl.per_round_k = 5;
  tmpl.cv_folds = 5;
  tmpl.curve_cap = 30;

  SUBCASE("shape and recomputed summaries") {
    const auto rep = run_comparison(syn.data, "syn", kAllCriteria, 4, tmpl, 9);
    REQUIRE(rep.entries.size() == 3);
    for (std::size_t c = 0; c < 3; ++c) {
      const auto& e = rep.entries[c];
      CHECK(e.dataset == "syn");
      CHECK(e.criterion == kAllCriteria[c]);
      CHECK(e.presented.accuracies.size() == 4);
      CHECK(e.presented.feature_counts == e.conventional.feature_counts);
      CHECK(e.conventional.swept_curve.size() == 30);
      CHECK(e.presented.swept_curve.size() <= 30);
      for (const auto* m : {&e.presented, &e.conventional}) {
        MethodResult again = *m;
        summarize(again);
        CHECK(again.mean == m->mean);
        CHECK(again.std == m->std);
        CHECK(again.n_features_used == m->n_features_used);
        for (double a : m->accuracies) {
          CHECK(a >= 0.0);
          CHECK(a <= 1.0);
        }
      }
    }
  }
  SUBCASE("deterministic and independent of threads") {
    const auto a = run_comparison(syn.data, "syn", kAllCriteria, 3, tmpl, 4);
    tmpl.threads = 3;
    const auto b = run_comparison(syn.data, "syn", kAllCriteria, 3, tmpl, 4);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      CHECK(a.entries[i].presented == b.entries[i].presented);
      CHECK(a.entries[i].conventional == b.entries[i].conventional);
    }
  }
  SUBCASE("full-sample rounds with k = 1 reduce to the baseline") {
    tmpl.rounds = 3;
    tmpl.per_round_k = 1;
    tmpl.subset_fraction = 1.0;
    const auto rep = run_comparison(syn.data, "syn", kAllCriteria, 3, tmpl, 2);
    for (const auto& e : rep.entries) {
      CHECK(e.presented.accuracies == e.conventional.accuracies);
      CHECK(e.presented.feature_counts == std::vector<std::size_t>(3, 1));
      CHECK(e.presented.mean == e.conventional.mean);
      CHECK(e.presented.std == e.conventional.std);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS(run_comparison(syn.data, "syn", kAllCriteria, 1, tmpl, 0));
    CHECK_THROWS(run_comparison(syn.data, "syn", std::span<const CriterionKind>{}, 3, tmpl, 0));
    tmpl.per_round_k = 41;
    CHECK_THROWS(run_comparison(syn.data, "syn", kAllCriteria, 3, tmpl, 0));
  }
}
