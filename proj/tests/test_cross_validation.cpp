#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "stablefs/cross_validation.hpp"
#include "stablefs/naive_bayes.hpp"
#include "stablefs/random.hpp"
#include "test_helpers.hpp"

using namespace stablefs;

namespace {

std::vector<std::size_t> fold_sizes(const FoldAssignment& a, std::span<const ClassId> labels,
                                    ClassId c) {
  std::vector<std::size_t> sizes(a.k, 0);
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == c) ++sizes[a.fold[i]];
  return sizes;
}

}  // namespace

TEST_CASE("kfold examples") {
  const std::vector<ClassId> five_five = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1};
  const auto a = kfold(five_five, 5, 3);
  CHECK(fold_sizes(a, five_five, 0) == std::vector<std::size_t>(5, 1));
  CHECK(fold_sizes(a, five_five, 1) == std::vector<std::size_t>(5, 1));
  CHECK(a == kfold(five_five, 5, 3));

  const std::vector<ClassId> sevens = {0, 0, 0, 0, 0, 0, 0, 1, 1, 1};
  auto sizes = fold_sizes(kfold(sevens, 3, 8), sevens, 0);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{2, 2, 3});

  CHECK_THROWS(kfold(five_five, 1, 0));
  CHECK_THROWS(kfold(five_five, 11, 0));
  // The lone class-1 sample leaves its fold's complement single-class.
  CHECK_THROWS(kfold(std::vector<ClassId>{0, 0, 0, 1}, 2, 0));
}

TEST_CASE("kfold property: stratified partition") {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    const std::size_t k = 2 + rng.below(9);
    const std::size_t n = 2 * k + rng.below(60);
    const std::size_t classes = 2 + rng.below(3);
    std::vector<ClassId> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<ClassId>(i % classes);
    rng.shuffle(std::span(y));
    const auto a = kfold(y, k, rng.next());
    REQUIRE(a.fold.size() == n);
    std::vector<std::size_t> total(k, 0);
    for (auto f : a.fold) {
      REQUIRE(f < k);
      ++total[f];
    }
    CHECK(*std::max_element(total.begin(), total.end()) -
              *std::min_element(total.begin(), total.end()) <=
          1);
    for (ClassId c = 0; c < classes; ++c) {
      const auto s = fold_sizes(a, y, c);
      CHECK(*std::max_element(s.begin(), s.end()) - *std::min_element(s.begin(), s.end()) <= 1);
    }
  }
}

TEST_CASE("cv_accuracy") {
  SUBCASE("perfectly separating feature") {
    const auto ds = testing::make_dataset(
        {{0, 0.1, 0.2, 0.3, 0.4, 0.5, 10, 10.1, 10.2, 10.3, 10.4, 10.5}},
        {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1});
    const auto train = testing::all_rows(ds);
    const auto folds = kfold_for(ds, train, 3, 1);
    CHECK(cv_accuracy(ds, train, FeatureList{0}, folds) == 1.0);
  }
  SUBCASE("shuffled labels sit near the majority frequency") {
    Rng rng(4);
    double sum = 0;
    for (int t = 0; t < 10; ++t) {
      const std::size_t n = 300;
      std::vector<ClassId> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = i < 210 ? 0 : 1;
      rng.shuffle(std::span(y));
      std::vector<std::vector<double>> cols(2, std::vector<double>(n));
      for (auto& c : cols)
        for (auto& v : c) v = rng.normal();
      const auto ds = testing::make_dataset(cols, y);
      const auto train = testing::all_rows(ds);
      sum += cv_accuracy(ds, train, FeatureList{0, 1}, kfold_for(ds, train, 10, rng.next()));
    }
    CHECK(std::abs(sum / 10 - 0.7) <= 0.1);
  }
  SUBCASE("duplicated feature under balanced folds") {
    const auto syn = make_synthetic(40, 3, 1, 1.0, 6);
    const auto train = testing::all_rows(syn.data);
    const auto folds = kfold_for(syn.data, train, 5, 2);  // 4 + 4 per fold, balanced fits
    const auto f = syn.informative[0];
    CHECK(cv_accuracy(syn.data, train, FeatureList{f}, folds) ==
          cv_accuracy(syn.data, train, FeatureList{f, f}, folds));
  }
  SUBCASE("sample permutation with the mapped fold assignment") {
    const auto syn = make_synthetic(50, 6, 3, 1.0, 12);
    SampleList train = testing::all_rows(syn.data);
    const auto folds = kfold_for(syn.data, train, 5, 3);
    const FeatureList feats = {0, 1, 2, 3, 4, 5};
    const double base = cv_accuracy(syn.data, train, feats, folds);

    std::vector<std::size_t> perm(train.size());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(8);
    rng.shuffle(std::span(perm));
    SampleList ptrain(train.size());
    FoldAssignment pfolds{folds.k, std::vector<std::size_t>(train.size())};
    for (std::size_t i = 0; i < perm.size(); ++i) {
      ptrain[i] = train[perm[i]];
      pfolds.fold[i] = folds.fold[perm[i]];
    }
    CHECK(cv_accuracy(syn.data, ptrain, feats, pfolds) == base);
    CHECK(base >= 0.0);
    CHECK(base <= 1.0);
  }
  SUBCASE("errors") {
    const auto ds = testing::make_dataset({{0, 1, 2, 3}}, {0, 0, 1, 1});
    const auto train = testing::all_rows(ds);
    const auto folds = kfold_for(ds, train, 2, 0);
    CHECK_THROWS(cv_accuracy(ds, train, FeatureList{}, folds));
    CHECK_THROWS(cv_accuracy(ds, SampleList{0, 1, 2}, FeatureList{0}, folds));
  }
}

TEST_CASE("incremental curves equal direct evaluation bit for bit") {
  Rng rng(55);
  for (int t = 0; t < 30; ++t) {
    auto syn = make_synthetic(30 + rng.below(30), 25, 4, 1.5, rng.next());
    // Mix in wide-range and near-constant columns so the variance floor
    // moves and some class variances fall below it.
    std::vector<std::vector<double>> cols;
    for (std::size_t f = 0; f < syn.data.n_features(); ++f) {
      auto c = std::vector<double>(syn.data.column(f).begin(), syn.data.column(f).end());
      if (f % 5 == 1)
        for (auto& v : c) v *= 1e5;
      if (f % 7 == 3)
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = 1.0 + (i % 9 == 0 ? 1e-7 : 0.0);
      cols.push_back(std::move(c));
    }
    const auto ds = Dataset(std::move(cols), std::vector<ClassId>(syn.data.labels().begin(),
                                                                  syn.data.labels().end()),
                            syn.data.feature_names(), syn.data.class_names());
    FeatureList order(ds.n_features());
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.shuffle(std::span(order));

    const auto train = testing::all_rows(ds);
    const auto folds = kfold_for(ds, train, 2 + rng.below(9), rng.next());
    const auto curve = cv_accuracy_curve(ds, train, order, folds, 20);
    REQUIRE(curve.size() == 20);
    for (std::size_t j = 0; j < curve.size(); ++j) {
      const std::span<const std::size_t> prefix(order.data(), j + 1);
      REQUIRE(curve[j] == cv_accuracy(ds, train, prefix, folds));
    }

    SampleList fit, eval;
    for (std::size_t i = 0; i < ds.n_samples(); ++i) (i % 3 == 0 ? eval : fit).push_back(i);
    const auto hold = holdout_accuracy_curve(ds, fit, eval, order, 100);
    REQUIRE(hold.size() == order.size());
    for (std::size_t j = 0; j < hold.size(); ++j) {
      const std::span<const std::size_t> prefix(order.data(), j + 1);
      REQUIRE(hold[j] == accuracy(fit_naive_bayes(ds, fit, prefix), ds, eval));
    }
  }
}
