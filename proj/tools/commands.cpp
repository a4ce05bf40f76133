#include "commands.hpp"

#include <fstream>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>

namespace stablefs::cli {

namespace fs = std::filesystem;

namespace {

std::string header_comment(const RunConfig& cfg, std::string_view command) {
  return fmt::format("# stablefs {}\n# seed={}\n# config_hash={}\n", command, cfg.seed,
                     cfg.hash());
}

SyntheticDataset synthesize(const RunConfig& cfg, const SyntheticSpec& spec) {
  return make_synthetic(spec.samples, spec.features, spec.informative, spec.separation,
                        spec.seed.value_or(cfg.seed));
}

std::string run_meta(const RunConfig& cfg, std::string_view command, std::string_view extra) {
  return header_comment(cfg, command) + cfg.canonical() + std::string(extra);
}

CriterionKind single_criterion(const RunConfig& cfg) {
  if (cfg.criteria.size() > 1)
    throw std::invalid_argument("select takes a single criterion");
  return cfg.criteria.empty() ? CriterionKind::Fisher : cfg.criteria.front();
}

}  // namespace

void commit_outputs(const fs::path& dir, const std::vector<OutputFile>& files) {
  fs::create_directories(dir);
  std::vector<fs::path> temps;
  auto cleanup = [&] {
    std::error_code ignored;
    for (const auto& t : temps) fs::remove(t, ignored);
  };
  try {
    for (const auto& f : files) {
      const auto tmp = dir / ("." + f.name + ".tmp");
      temps.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << f.contents;
      out.close();
      if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    }
    for (std::size_t i = 0; i < files.size(); ++i) fs::rename(temps[i], dir / files[i].name);
  } catch (...) {
    cleanup();
    throw;
  }
}

std::vector<NamedDataset> load_datasets(const RunConfig& cfg) {
  std::vector<NamedDataset> out;
  for (const auto& path : cfg.data)
    out.push_back({fs::path(path).stem().string(), load_csv(path, cfg.label_column)});
  if (cfg.synthetic) out.push_back({"synthetic", synthesize(cfg, *cfg.synthetic).data});
  if (out.empty()) throw std::invalid_argument("no dataset given (use --data or --synthetic)");
  return out;
}

std::vector<OutputFile> render_selection(const RunConfig& cfg, const Dataset& ds,
                                         const SelectionResult& result) {
  const auto& h = result.histogram;
  const auto& names = ds.feature_names();

  std::vector<std::size_t> rank_of(h.n_features());
  for (std::size_t i = 0; i < h.order.size(); ++i) rank_of[h.order[i]] = i;

  std::string hist = header_comment(cfg, "select") + "feature,count,weight,order\n";
  for (std::size_t f = 0; f < h.n_features(); ++f)
    hist += fmt::format("{},{},{},{}\n", names[f], h.counts[f], h.weights[f], rank_of[f]);

  std::string curve = header_comment(cfg, "select") + "prefix_len,cumulative_area,cv_accuracy\n";
  for (const auto& p : result.accuracy_curve)
    curve += fmt::format("{},{},{}\n", p.prefix_len, p.cumulative_area, p.cv_accuracy);

  std::string selected =
      header_comment(cfg, "select") + "rank,feature_name,feature_index,individual_cv_accuracy\n";
  for (std::size_t i = 0; i < result.stable_features.size(); ++i) {
    const auto f = result.stable_features[i];
    selected += fmt::format("{},{},{},{}\n", i + 1, names[f], f, result.per_feature_cv[i]);
  }

  const auto extra = fmt::format("threshold={}\nbest_prefix_len={}\nn_selected={}\n",
                                 result.threshold, result.best_prefix_len,
                                 result.stable_features.size());
  return {{"histogram.csv", std::move(hist)},
          {"curve.csv", std::move(curve)},
          {"selected.csv", std::move(selected)},
          {"run_meta.txt", run_meta(cfg, "select", extra)}};
}

std::vector<OutputFile> render_report(const RunConfig& cfg, const ExperimentReport& report) {
  std::string table = header_comment(cfg, "compare") +
                      "dataset,criterion,method,n_features,mean_accuracy,std_accuracy\n";
  std::string curves =
      header_comment(cfg, "compare") + "dataset,criterion,method,prefix_len,mean_test_accuracy\n";
  for (const auto& dataset : report.datasets()) {
    for (const auto& e : report.entries) {
      if (e.dataset != dataset) continue;
      for (bool presented : {true, false}) {
        const auto& m = presented ? e.presented : e.conventional;
        const char* method = presented ? "presented" : "conventional";
        table += fmt::format("{},{},{},{},{},{}\n", e.dataset, to_string(e.criterion), method,
                             m.n_features_used, m.mean, m.std);
        for (std::size_t j = 0; j < m.swept_curve.size(); ++j)
          curves += fmt::format("{},{},{},{},{}\n", e.dataset, to_string(e.criterion), method,
                                j + 1, m.swept_curve[j]);
      }
    }
    for (bool presented : {true, false}) {
      const auto avg = report.average(dataset, presented);
      table += fmt::format("{},average,{},{},{},{}\n", dataset,
                           presented ? "presented" : "conventional", avg.n_features, avg.mean,
                           avg.std);
    }
  }
  return {{"report.csv", std::move(table)},
          {"curves.csv", std::move(curves)},
          {"run_meta.txt", run_meta(cfg, "compare", "")}};
}

void cmd_select(const RunConfig& cfg) {
  const auto criterion = single_criterion(cfg);
  auto datasets = load_datasets(cfg);
  if (datasets.size() != 1) throw std::invalid_argument("select takes exactly one dataset");
  const auto& ds = datasets.front().data;

  SampleList all(ds.n_samples());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const auto result = select(ds, all, cfg.histogram_config(criterion));
  RunConfig effective = cfg;
  effective.criteria = {criterion};
  commit_outputs(cfg.out, render_selection(effective, ds, result));
}

void cmd_compare(const RunConfig& cfg) {
  std::vector<CriterionKind> criteria = cfg.criteria;
  if (criteria.empty()) criteria.assign(std::begin(kAllCriteria), std::end(kAllCriteria));
  const auto datasets = load_datasets(cfg);

  ExperimentReport report;
  for (const auto& [name, ds] : datasets) {
    auto part = run_comparison(ds, name, criteria, cfg.repetitions,
                               cfg.histogram_config(criteria.front()), cfg.seed);
    for (auto& e : part.entries) report.entries.push_back(std::move(e));
  }
  RunConfig effective = cfg;
  effective.criteria = criteria;
  commit_outputs(cfg.out, render_report(effective, report));
}

void cmd_synth(const RunConfig& cfg) {
  const auto spec = cfg.synthetic.value_or(SyntheticSpec{});
  const auto syn = synthesize(cfg, spec);
  const auto& ds = syn.data;

  RunConfig meta = cfg;
  meta.synthetic = spec;
  std::string csv = header_comment(meta, "synth");
  for (const auto& name : ds.feature_names()) csv += name + ",";
  csv += "label\n";
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    for (std::size_t f = 0; f < ds.n_features(); ++f) csv += fmt::format("{},", ds.value(i, f));
    csv += ds.class_names()[ds.labels()[i]] + "\n";
  }

  std::string manifest = header_comment(meta, "synth");
  for (std::size_t f : syn.informative) manifest += ds.feature_names()[f] + "\n";

  commit_outputs(cfg.out, {{"synthetic.csv", std::move(csv)}, {"planted.txt", std::move(manifest)}});
}

}  // namespace stablefs::cli
