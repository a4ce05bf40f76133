#include "stablefs/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "stablefs/random.hpp"

namespace stablefs {

Dataset::Dataset(std::vector<std::vector<double>> columns, std::vector<ClassId> labels,
                 std::vector<std::string> feature_names, std::vector<std::string> class_names)
    : labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      class_names_(std::move(class_names)) {
  const std::size_t n = labels_.size();
  if (n < 2) throw std::invalid_argument("dataset needs at least 2 samples");
  if (columns.size() != feature_names_.size())
    throw std::invalid_argument("feature name count does not match column count");
  if (class_names_.empty()) throw std::invalid_argument("dataset has no classes");

  std::unordered_set<std::string> seen;
  for (const auto& name : feature_names_) {
    if (!seen.insert(name).second)
      throw std::invalid_argument("duplicate feature name '" + name + "'");
  }

  values_.reserve(columns.size() * n);
  for (std::size_t f = 0; f < columns.size(); ++f) {
    if (columns[f].size() != n)
      throw std::invalid_argument("column '" + feature_names_[f] + "' has wrong length");
    for (double v : columns[f]) {
      if (!std::isfinite(v))
        throw std::invalid_argument("non-finite value in column '" + feature_names_[f] + "'");
    }
    values_.insert(values_.end(), columns[f].begin(), columns[f].end());
  }

  std::vector<std::size_t> counts(class_names_.size(), 0);
  for (ClassId c : labels_) {
    if (c >= class_names_.size()) throw std::invalid_argument("label outside class list");
    ++counts[c];
  }
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] == 0)
      throw std::invalid_argument("class '" + class_names_[c] + "' has no samples");
  }
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(n_classes(), 0);
  for (ClassId c : labels_) ++counts[c];
  return counts;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      return out;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

// Groups `indices` by class, preserving their relative order.
std::vector<SampleList> group_by_class(std::span<const std::size_t> indices,
                                       std::span<const ClassId> labels) {
  ClassId max_class = 0;
  for (std::size_t i : indices) max_class = std::max(max_class, labels[i]);
  std::vector<SampleList> groups(indices.empty() ? 0 : max_class + 1);
  for (std::size_t i : indices) groups[labels[i]].push_back(i);
  return groups;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");

  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (line.starts_with('#') || trim(line).empty()) continue;
    have_header = true;
    break;
  }
  if (!have_header) throw std::runtime_error(path.string() + ": missing header row");

  std::vector<std::string> header;
  for (auto field : split_fields(line)) header.emplace_back(field);
  std::size_t label_pos = header.size();
  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == label_column) {
      if (label_pos != header.size())
        throw std::runtime_error(path.string() + ": label column appears twice");
      label_pos = j;
    } else {
      feature_names.emplace_back(header[j]);
    }
  }
  if (label_pos == header.size())
    throw std::runtime_error(path.string() + ": label column '" + label_column + "' not found");
  {
    std::unordered_set<std::string> seen;
    for (const auto& name : feature_names) {
      if (!seen.insert(name).second)
        throw std::runtime_error(path.string() + ": duplicate feature name '" + name + "'");
    }
  }

  std::vector<std::vector<double>> columns(feature_names.size());
  std::vector<ClassId> labels;
  std::vector<std::string> class_names;
  std::unordered_map<std::string, ClassId> class_ids;

  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++row;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      std::ostringstream msg;
      msg << path.string() << ": line " << line_no << " has " << fields.size()
          << " fields, expected " << header.size();
      throw std::runtime_error(msg.str());
    }
    std::size_t f = 0;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (j == label_pos) continue;
      const auto cell = fields[j];
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() ||
          !std::isfinite(v)) {
        std::ostringstream msg;
        msg << path.string() << ": row " << row << " (line " << line_no << "), column '"
            << header[j] << "': not a finite number: '" << cell << "'";
        throw std::runtime_error(msg.str());
      }
      columns[f++].push_back(v);
    }
    const std::string label(fields[label_pos]);
    if (label.empty()) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row << " (line " << line_no << "): empty label";
      throw std::runtime_error(msg.str());
    }
    auto [it, inserted] = class_ids.try_emplace(label, static_cast<ClassId>(class_names.size()));
    if (inserted) class_names.push_back(label);
    labels.push_back(it->second);
  }

  if (class_names.size() < 2)
    throw std::runtime_error(path.string() + ": fewer than 2 classes");
  return Dataset(std::move(columns), std::move(labels), std::move(feature_names),
                 std::move(class_names));
}

SplitIndices split_equal(const Dataset& ds, std::uint64_t seed) {
  const auto counts = ds.class_counts();
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 2)
      throw std::invalid_argument("class '" + ds.class_names()[c] +
                                  "' has fewer than 2 samples; cannot split");
  }
  SampleList all(ds.n_samples());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto groups = group_by_class(all, ds.labels());

  Rng rng(seed);
  SplitIndices out;
  for (auto& members : groups) {
    rng.shuffle(std::span(members));
    const std::size_t n_train = members.size() / 2;
    out.train.insert(out.train.end(), members.begin(), members.begin() + n_train);
    out.test.insert(out.test.end(), members.begin() + n_train, members.end());
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

SampleList subsample(std::span<const std::size_t> train, std::span<const ClassId> labels,
                     double fraction, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw std::invalid_argument("subset fraction must lie in (0, 1]");
  if (train.empty()) throw std::invalid_argument("cannot subsample an empty training set");
  auto groups = group_by_class(train, labels);
  std::size_t present = 0;
  for (const auto& g : groups) present += g.empty() ? 0 : 1;
  if (present < 2) throw std::invalid_argument("training set is single-class");

  Rng rng(seed);
  SampleList out;
  for (auto& members : groups) {
    if (members.empty()) continue;
    const auto wanted = std::max<long>(
        1, std::lround(fraction * static_cast<double>(members.size())));
    const auto take = std::min(members.size(), static_cast<std::size_t>(wanted));
    rng.shuffle(std::span(members));
    out.insert(out.end(), members.begin(), members.begin() + take);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DiscretizedColumn discretize_column(std::span<const double> column, std::uint32_t n_bins) {
  if (n_bins < 2) throw std::invalid_argument("discretization needs at least 2 bins");
  DiscretizedColumn out;
  out.bins.assign(column.size(), 0);
  if (column.empty()) return out;

  const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double range = hi - lo;
  if (!(range > 0.0)) return out;

  out.n_bins = n_bins;
  const double scale = static_cast<double>(n_bins) / range;
  for (std::size_t i = 0; i < column.size(); ++i) {
    const double pos = (column[i] - lo) * scale;
    const auto bin = static_cast<std::uint32_t>(std::floor(pos));
    out.bins[i] = std::min(bin, n_bins - 1);
  }
  out.edges.reserve(n_bins - 1);
  for (std::uint32_t j = 1; j < n_bins; ++j)
    out.edges.push_back(lo + range * static_cast<double>(j) / static_cast<double>(n_bins));
  return out;
}

SyntheticDataset make_synthetic(std::size_t n_samples, std::size_t n_features,
                                std::size_t n_informative, double class_separation,
                                std::uint64_t seed) {
  if (n_samples < 4) throw std::invalid_argument("synthetic dataset needs at least 4 samples");
  if (n_features == 0) throw std::invalid_argument("synthetic dataset needs at least 1 feature");
  if (n_informative > n_features)
    throw std::invalid_argument("n_informative exceeds n_features");
  if (!std::isfinite(class_separation) || class_separation < 0.0)
    throw std::invalid_argument("class separation must be finite and non-negative");

  Rng rng(seed);
  std::vector<ClassId> labels(n_samples);
  for (std::size_t i = 0; i < n_samples; ++i) labels[i] = static_cast<ClassId>(i % 2);

  FeatureList order(n_features);
  for (std::size_t f = 0; f < n_features; ++f) order[f] = f;
  rng.shuffle(std::span(order));
  FeatureList informative(order.begin(), order.begin() + n_informative);
  std::sort(informative.begin(), informative.end());

  std::vector<char> is_informative(n_features, 0);
  for (std::size_t f : informative) is_informative[f] = 1;

  const double half = class_separation / 2.0;
  std::vector<std::vector<double>> columns(n_features, std::vector<double>(n_samples));
  for (std::size_t f = 0; f < n_features; ++f) {
    for (std::size_t i = 0; i < n_samples; ++i) {
      const double shift = is_informative[f] ? (labels[i] == 0 ? -half : half) : 0.0;
      columns[f][i] = shift + rng.normal();
    }
  }

  std::vector<std::string> names(n_features);
  for (std::size_t f = 0; f < n_features; ++f) names[f] = "f" + std::to_string(f);
  return {Dataset(std::move(columns), std::move(labels), std::move(names), {"c0", "c1"}),
          std::move(informative)};
}

}  // namespace stablefs
