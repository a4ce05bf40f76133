#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "stablefs/criteria.hpp"
#include "stablefs/random.hpp"
#include "test_helpers.hpp"

using namespace stablefs;

namespace {

DiscretizedColumn bins_of(std::vector<std::uint32_t> bins) {
  DiscretizedColumn d;
  d.n_bins = bins.empty() ? 1 : *std::max_element(bins.begin(), bins.end()) + 1;
  d.bins = std::move(bins);
  return d;
}

const std::vector<ClassId> kAABB = {0, 0, 1, 1};

}  // namespace

TEST_CASE("criterion names round-trip") {
  for (auto kind : kAllCriteria) CHECK(parse_criterion(to_string(kind)) == kind);
  CHECK_THROWS(parse_criterion("relief"));
}

TEST_CASE("fisher_score examples") {
  const std::vector<double> constant = {3, 3, 3, 3};
  CHECK(fisher_score(constant, kAABB) == 0.0);

  const std::vector<double> uneven = {1, 2, 3, 5};
  CHECK(fisher_score(uneven, kAABB) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(oracle::fisher(uneven, kAABB) == doctest::Approx(2.5).epsilon(1e-12));

  const std::vector<double> separated = {0, 0, 1, 1};
  CHECK(fisher_score(separated, kAABB) == doctest::Approx(1.0 / kFisherEpsilon));

  const std::vector<double> tenths = {0.1, 0.1, 0.1, 0.1, 0.1};
  CHECK(fisher_score(tenths, std::vector<ClassId>{0, 0, 1, 1, 1}) == 0.0);

  CHECK_THROWS(fisher_score(uneven, std::vector<ClassId>{1, 1, 1, 1}));
  CHECK_THROWS(fisher_score(uneven, std::vector<ClassId>{0, 1}));
}

TEST_CASE("chi_square_score examples") {
  CHECK(chi_square_score(bins_of({0, 0, 1, 1}), std::vector<ClassId>{0, 1, 0, 1}) == 0.0);
  CHECK(chi_square_score(bins_of({0, 0, 1, 1}), kAABB) == doctest::Approx(4.0));
  CHECK(oracle::chi_square(std::vector<std::uint32_t>{0, 0, 1, 1}, 2, kAABB) ==
        doctest::Approx(4.0));
  CHECK(chi_square_score(bins_of({0, 0, 0, 0}), kAABB) == 0.0);
  CHECK_THROWS(chi_square_score(bins_of({0, 1}), std::vector<ClassId>{0, 0}));
}

TEST_CASE("info_gain_score examples") {
  CHECK(info_gain_score(bins_of({0, 0, 1, 1}), kAABB) == doctest::Approx(1.0));
  CHECK(info_gain_score(bins_of({0, 1, 0, 1}), kAABB) == 0.0);
  // H(Y|X) = 3/4 * H(1/3) = 0.6887...
  const double expect = 1.0 - 0.75 * (-(1.0 / 3) * std::log2(1.0 / 3) - (2.0 / 3) * std::log2(2.0 / 3));
  CHECK(info_gain_score(bins_of({0, 0, 0, 1}), kAABB) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(info_gain_score(bins_of({0, 0, 0, 1}), kAABB) == doctest::Approx(0.3113).epsilon(1e-3));
  CHECK_THROWS(info_gain_score(bins_of({0, 1}), std::vector<ClassId>{1, 1}));
}

TEST_CASE("scorers agree with brute-force oracles on random inputs") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(29);
    const std::size_t classes = 2 + rng.below(3);
    std::vector<ClassId> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<ClassId>(i < classes ? i % 2 : rng.below(classes));
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal() * 3.0 + 1.0;
    const auto n_bins = static_cast<std::uint32_t>(2 + rng.below(5));
    const auto d = discretize_column(x, n_bins);

    CHECK(oracle::rel_error(fisher_score(x, y), oracle::fisher(x, y)) <= 1e-9);
    CHECK(oracle::rel_error(chi_square_score(d, y), oracle::chi_square(d.bins, d.n_bins, y)) <=
          1e-9);
    CHECK(oracle::rel_error(info_gain_score(d, y), oracle::info_gain(d.bins, d.n_bins, y)) <=
          1e-9);
  }
}

TEST_CASE("criterion invariants") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 6 + rng.below(25);
    std::vector<ClassId> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<ClassId>(i % 3);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();

    // Sample permutation.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    rng.shuffle(std::span(perm));
    std::vector<double> px(n);
    std::vector<ClassId> py(n);
    for (std::size_t i = 0; i < n; ++i) {
      px[i] = x[perm[i]];
      py[i] = y[perm[i]];
    }
    CHECK(fisher_score(px, py) == doctest::Approx(fisher_score(x, y)).epsilon(1e-10));
    const auto d = discretize_column(x, 5);
    const auto pd = discretize_column(px, 5);
    CHECK(chi_square_score(pd, py) == doctest::Approx(chi_square_score(d, y)).epsilon(1e-10));
    CHECK(info_gain_score(pd, py) == doctest::Approx(info_gain_score(d, y)).epsilon(1e-10));

    // Fisher: shift and scale.
    std::vector<double> affine(n);
    const double scale = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.01 + 100.0 * rng.uniform());
    for (std::size_t i = 0; i < n; ++i) affine[i] = x[i] * scale + 7.5;
    CHECK(fisher_score(affine, y) == doctest::Approx(fisher_score(x, y)).epsilon(1e-8));

    // Information gain bounds.
    const double ig = info_gain_score(d, y);
    CHECK(ig >= 0.0);
    CHECK(ig <= oracle::entropy(y) + 1e-12);

    // Same contingency table, same score: relabel bins by a bijection.
    std::vector<std::uint32_t> relabel = {3, 0, 4, 1, 2};
    DiscretizedColumn r = d;
    for (auto& b : r.bins) b = relabel[b];
    CHECK(chi_square_score(r, y) == doctest::Approx(chi_square_score(d, y)).epsilon(1e-12));
    CHECK(info_gain_score(r, y) == doctest::Approx(info_gain_score(d, y)).epsilon(1e-12));
  }
}

TEST_CASE("a constant column never outranks a separating column") {
  const auto ds = testing::make_dataset({{4, 4, 4, 4, 4, 4}, {0, 0, 0, 9, 9, 9}},
                                        {0, 0, 0, 1, 1, 1});
  const auto rows = testing::all_rows(ds);
  for (auto kind : kAllCriteria) {
    const auto r = rank_features(ds, rows, kind, 10);
    CHECK(r.entries[0].feature == 1);
    CHECK(r.entries[1].score == 0.0);
  }
}

TEST_CASE("rank_features") {
  SUBCASE("label copy beats noise under infogain") {
    const auto ds = testing::make_dataset({{0, 0, 0, 1, 1, 1}, {0.3, 0.9, 0.1, 0.8, 0.2, 0.5}},
                                          {0, 0, 0, 1, 1, 1});
    const auto r = rank_features(ds, testing::all_rows(ds), CriterionKind::InfoGain, 10);
    CHECK(r.entries[0].feature == 0);
    CHECK(r.entries[0].score == doctest::Approx(1.0));
    CHECK(r.criterion == CriterionKind::InfoGain);
  }
  SUBCASE("all constant: identity order") {
    const auto ds = testing::make_dataset({{1, 1, 1, 1}, {2, 2, 2, 2}, {3, 3, 3, 3}}, kAABB);
    for (auto kind : kAllCriteria) {
      const auto r = rank_features(ds, testing::all_rows(ds), kind, 10);
      CHECK(top_k(r, 3) == FeatureList{0, 1, 2});
      for (const auto& e : r.entries) CHECK(e.score == 0.0);
    }
  }
  SUBCASE("row order does not matter") {
    const auto syn = make_synthetic(30, 12, 3, 1.0, 4);
    SampleList rows = {5, 2, 9, 17, 0, 21, 14, 3};
    SampleList sorted = rows;
    std::sort(sorted.begin(), sorted.end());
    for (auto kind : kAllCriteria) {
      const auto a = rank_features(syn.data, rows, kind, 4);
      const auto b = rank_features(syn.data, sorted, kind, 4);
      CHECK(a.entries == b.entries);
    }
  }
  SUBCASE("scores are finite, non-negative and non-increasing") {
    const auto syn = make_synthetic(40, 50, 5, 2.0, 8);
    for (auto kind : kAllCriteria) {
      const auto r = rank_features(syn.data, testing::all_rows(syn.data), kind, 10);
      for (std::size_t i = 0; i < r.entries.size(); ++i) {
        CHECK(std::isfinite(r.entries[i].score));
        CHECK(r.entries[i].score >= 0.0);
        if (i > 0) CHECK(r.entries[i - 1].score >= r.entries[i].score);
      }
    }
  }
  SUBCASE("single-class view") {
    const auto ds = testing::make_dataset({{1, 2, 3, 4}}, kAABB);
    CHECK_THROWS(rank_features(ds, SampleList{0, 1}, CriterionKind::Fisher, 10));
  }
}

TEST_CASE("top_k") {
  // Features 3 and 7 are identical and share the best score; 9 is weaker.
  std::vector<std::vector<double>> cols(10, std::vector<double>{1, 1, 1, 1, 1, 1});
  cols[3] = cols[7] = {0, 0.2, 0.1, 5, 5.3, 5.1};
  cols[9] = {0, 1, 2, 2, 3, 4};
  const auto ds = testing::make_dataset(cols, {0, 0, 0, 1, 1, 1});
  const auto r = rank_features(ds, testing::all_rows(ds), CriterionKind::Fisher, 10);
  CHECK(r.entries[0].score == r.entries[1].score);
  CHECK(top_k(r, 2) == FeatureList{3, 7});
  CHECK(top_k(r, 3) == FeatureList{3, 7, 9});
  CHECK(top_k(r, 0).empty());
  CHECK(top_k(r, 10).size() == 10);
  CHECK_THROWS(top_k(r, 11));
}
