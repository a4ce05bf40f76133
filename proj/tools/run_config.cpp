#include "run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace stablefs::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw std::invalid_argument(fmt::format("{}: invalid value '{}'", key, text));
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value))
      throw std::invalid_argument(fmt::format("{}: value must be finite", key));
  }
  return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos
                                                   ? std::string_view::npos
                                                   : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace

SyntheticSpec SyntheticSpec::parse(std::string_view text) {
  SyntheticSpec spec;
  for (auto item : split_list(text)) {
    const auto eq = item.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument(fmt::format("synthetic: expected key=value, got '{}'", item));
    const auto key = trim(item.substr(0, eq));
    const auto value = item.substr(eq + 1);
    if (key == "samples")
      spec.samples = parse_number<std::size_t>("synthetic.samples", value);
    else if (key == "features")
      spec.features = parse_number<std::size_t>("synthetic.features", value);
    else if (key == "informative")
      spec.informative = parse_number<std::size_t>("synthetic.informative", value);
    else if (key == "separation")
      spec.separation = parse_number<double>("synthetic.separation", value);
    else if (key == "seed")
      spec.seed = parse_number<std::uint64_t>("synthetic.seed", value);
    else
      throw std::invalid_argument(fmt::format("synthetic: unknown key '{}'", key));
  }
  return spec;
}

std::string SyntheticSpec::to_string() const {
  auto s = fmt::format("samples={},features={},informative={},separation={}", samples, features,
                       informative, separation);
  if (seed) s += fmt::format(",seed={}", *seed);
  return s;
}

void RunConfig::set(std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "data") {
    if (value.empty()) throw std::invalid_argument("data: empty path");
    data.emplace_back(value);
  } else if (key == "label-column") {
    if (value.empty()) throw std::invalid_argument("label-column: empty name");
    label_column = std::string(value);
  } else if (key == "synthetic") {
    synthetic = SyntheticSpec::parse(value);
  } else if (key == "criterion") {
    for (auto name : split_list(value)) criteria.push_back(parse_criterion(name));
  } else if (key == "rounds") {
    rounds = parse_number<std::size_t>(key, value);
  } else if (key == "fraction") {
    fraction = parse_number<double>(key, value);
  } else if (key == "per-round-k") {
    per_round_k = parse_number<std::size_t>(key, value);
  } else if (key == "bins") {
    bins = parse_number<std::uint32_t>(key, value);
  } else if (key == "folds") {
    folds = parse_number<std::size_t>(key, value);
  } else if (key == "curve-cap") {
    curve_cap = parse_number<std::size_t>(key, value);
  } else if (key == "repetitions") {
    repetitions = parse_number<std::size_t>(key, value);
  } else if (key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "out") {
    if (value.empty()) throw std::invalid_argument("out: empty path");
    out = std::filesystem::path(std::string(value));
  } else if (key == "threads") {
    threads = parse_number<unsigned>(key, value);
  } else {
    throw std::invalid_argument(fmt::format("unknown setting '{}'", key));
  }
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open config file '{}'", path.string()));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw std::invalid_argument(
          fmt::format("{}:{}: expected key = value", path.string(), line_no));
    try {
      set(text.substr(0, eq), text.substr(eq + 1));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
    }
  }
}

std::string RunConfig::canonical() const {
  std::string criteria_list;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (i > 0) criteria_list += ',';
    criteria_list += to_string(criteria[i]);
  }
  std::string data_list;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (i > 0) data_list += ',';
    data_list += data[i];
  }
  std::string s;
  s += fmt::format("bins={}\n", bins);
  s += fmt::format("criterion={}\n", criteria_list);
  s += fmt::format("curve-cap={}\n", curve_cap);
  s += fmt::format("data={}\n", data_list);
  s += fmt::format("folds={}\n", folds);
  s += fmt::format("fraction={}\n", fraction);
  s += fmt::format("label-column={}\n", label_column);
  s += fmt::format("per-round-k={}\n", per_round_k);
  s += fmt::format("repetitions={}\n", repetitions);
  s += fmt::format("rounds={}\n", rounds);
  s += fmt::format("seed={}\n", seed);
  s += fmt::format("synthetic={}\n", synthetic ? synthetic->to_string() : "");
  return s;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

HistogramConfig RunConfig::histogram_config(CriterionKind criterion) const {
  HistogramConfig cfg;
  cfg.rounds = rounds;
  cfg.subset_fraction = fraction;
  cfg.per_round_k = per_round_k;
  cfg.criterion = criterion;
  cfg.n_bins = bins;
  cfg.cv_folds = folds;
  cfg.curve_cap = curve_cap;
  cfg.master_seed = seed;
  cfg.threads = threads;
  return cfg;
}

}  // namespace stablefs::cli
