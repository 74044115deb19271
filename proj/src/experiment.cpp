#include "tiedpe/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tiedpe/entropy.hpp"
#include "tiedpe/errors.hpp"
#include "tiedpe/format.hpp"
#include "tiedpe/rng.hpp"

namespace tiedpe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::size_t to_positive_size(double v, const char* what) {
  if (!(v > 0) || v != std::floor(v) || v > 1e12)
    throw std::invalid_argument(std::string(what) +
                                " must be a positive integer");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string_view group_kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::RepeatedRatio: return "repeated_ratio";
    case GroupKind::HTrueQuartile: return "h_true_quartile";
  }
  return "?";
}

SweepConfig sweep_config_from(const Config& config) {
  SweepConfig sc;
  if (const ConfigSection* s = config.find("sweep")) {
    if (s->has("lengths")) {
      sc.lengths.clear();
      for (double v : s->get_doubles("lengths"))
        sc.lengths.push_back(to_positive_size(v, "sweep lengths"));
    }
    if (s->has("dims")) {
      sc.dims.clear();
      for (double v : s->get_doubles("dims")) {
        if (v < 2 || v > 16 || v != std::floor(v))
          throw std::invalid_argument("sweep dims must be integers in [2, 16]");
        sc.dims.push_back(static_cast<int>(v));
      }
    }
    if (s->has("strategies")) {
      sc.strategies.clear();
      for (const std::string& name : s->get_strings("strategies"))
        sc.strategies.push_back(parse_strategy(name));
    }
    sc.truncate_digits = s->get_int("truncate_decimals", sc.truncate_digits);
    sc.delay = s->get_int("delay", sc.delay);
    if (s->has("seed")) {
      const long long seed = s->get_int("seed");
      if (seed < 0) throw std::invalid_argument("sweep seed must be >= 0");
      sc.master_seed = static_cast<std::uint64_t>(seed);
    }
    if (s->has("bayes_mode")) {
      const std::string mode = s->get_string("bayes_mode");
      if (mode == "expected")
        sc.bayes_mode = BayesMode::ExpectedCount;
      else if (mode == "sampled")
        sc.bayes_mode = BayesMode::Sampled;
      else
        throw std::invalid_argument(
            "sweep bayes_mode must be expected or sampled");
    }
  }
  for (const ConfigSection* section : config.with_prefix("map "))
    sc.maps.push_back(map_spec_from_section(*section));
  return sc;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  if (config.lengths.empty() || config.dims.empty() ||
      config.strategies.empty())
    throw std::invalid_argument("sweep needs lengths, dims and strategies");
  if (config.delay < 1)
    throw std::invalid_argument("sweep delay must be >= 1");
  const std::vector<MapSpec> maps =
      config.maps.empty() ? default_catalog() : config.maps;

  std::vector<SweepRecord> records;
  records.reserve(maps.size() * config.lengths.size() * config.dims.size() *
                  config.strategies.size());
  std::uint64_t cell_index = 0;

  for (const MapSpec& spec : maps) {
    for (std::size_t n : config.lengths) {
      TimeSeries orig;
      TimeSeries coarse;
      std::string series_error;
      try {
        orig = generate(spec, n);
        coarse = truncate_decimals(orig, config.truncate_digits);
      } catch (const std::exception& e) {
        series_error = e.what();
      }
      for (int m : config.dims) {
        double h_true = kNaN;
        double ratio = kNaN;
        std::vector<Window> windows;
        std::string cell_error = series_error;
        if (cell_error.empty()) {
          try {
            // the untruncated orbit is tie-free, so the time-ordered fold
            // coincides with the plain rank mapping there
            const auto clean = embed(orig, m, config.delay);
            h_true = shannon_entropy(time_ordered(clean)).h;
            windows = embed(coarse, m, config.delay);
            ratio = repeated_ratio(windows);
          } catch (const std::exception& e) {
            cell_error = e.what();
          }
        }
        for (StrategyKind strategy : config.strategies) {
          SweepRecord rec;
          rec.map = spec.name;
          rec.n = n;
          rec.m = m;
          rec.strategy = strategy;
          rec.h_true = h_true;
          rec.h_hat = kNaN;
          rec.error = kNaN;
          rec.sq_error = kNaN;
          rec.repeated_ratio = ratio;
          rec.seed = derive_seed(config.master_seed, cell_index);
          ++cell_index;
          if (!cell_error.empty()) {
            rec.status = cell_error;
          } else {
            try {
              StrategyOptions options;
              options.bayes_mode = config.bayes_mode;
              options.seed = rec.seed;
              const auto dist = apply_strategy(strategy, windows, options);
              rec.h_hat = shannon_entropy(dist).h;
              rec.error = rec.h_hat - rec.h_true;
              rec.sq_error = rec.error * rec.error;
            } catch (const std::exception& e) {
              rec.status = e.what();
            }
          }
          records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

std::vector<AggregateRow> aggregate(std::span<const SweepRecord> records) {
  struct Acc {
    double sum_err = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
  };

  // repeated-ratio deciles, last bin inclusive of 1.0
  std::map<std::tuple<int, int, StrategyKind>, Acc> by_ratio;
  for (const SweepRecord& rec : records) {
    if (!rec.ok()) continue;
    int bin = static_cast<int>(std::floor(rec.repeated_ratio * 10.0));
    bin = std::clamp(bin, 0, 9);
    Acc& acc = by_ratio[{bin, rec.m, rec.strategy}];
    acc.sum_err += rec.error;
    acc.sum_sq += rec.sq_error;
    ++acc.count;
  }

  std::vector<AggregateRow> rows;
  for (const auto& [key, acc] : by_ratio) {
    const auto& [bin, m, strategy] = key;
    AggregateRow row;
    row.group = GroupKind::RepeatedRatio;
    row.bin_low = bin / 10.0;
    row.bin_high = (bin + 1) / 10.0;
    row.m = m;
    row.strategy = strategy;
    row.mse = acc.sum_sq / static_cast<double>(acc.count);
    row.bias = acc.sum_err / static_cast<double>(acc.count);
    row.count = acc.count;
    rows.push_back(row);
  }

  // quartiles of normalized true entropy over the distinct (map, n, m) cells
  std::map<std::tuple<std::string, std::size_t, int>, double> cells;
  for (const SweepRecord& rec : records) {
    if (!rec.ok()) continue;
    cells.emplace(std::tuple{rec.map, rec.n, rec.m},
                  rec.h_true / std::log(alphabet_size(
                                   SymbolKind::Permutation, rec.m)));
  }
  if (!cells.empty()) {
    std::vector<double> levels;
    levels.reserve(cells.size());
    for (const auto& [key, level] : cells) levels.push_back(level);
    std::sort(levels.begin(), levels.end());
    const std::size_t count = levels.size();
    double edges[5];
    edges[0] = levels.front();
    edges[4] = levels.back();
    for (std::size_t q = 1; q <= 3; ++q)
      edges[q] = count < 4 ? levels.back() : levels[count * q / 4];

    std::map<std::tuple<int, int, StrategyKind>, Acc> by_level;
    for (const SweepRecord& rec : records) {
      if (!rec.ok()) continue;
      const double level = cells.at({rec.map, rec.n, rec.m});
      int bin = 0;
      if (count >= 4)
        bin = level >= edges[3] ? 3 : level >= edges[2] ? 2
                                  : level >= edges[1] ? 1
                                                      : 0;
      Acc& acc = by_level[{bin, rec.m, rec.strategy}];
      acc.sum_err += rec.error;
      acc.sum_sq += rec.sq_error;
      ++acc.count;
    }
    for (const auto& [key, acc] : by_level) {
      const auto& [bin, m, strategy] = key;
      AggregateRow row;
      row.group = GroupKind::HTrueQuartile;
      row.bin_low = edges[bin];
      row.bin_high = edges[bin + 1];
      row.m = m;
      row.strategy = strategy;
      row.mse = acc.sum_sq / static_cast<double>(acc.count);
      row.bias = acc.sum_err / static_cast<double>(acc.count);
      row.count = acc.count;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_records_csv(std::ostream& out,
                       std::span<const SweepRecord> records) {
  out << "map,n,m,strategy,h_true,h_hat,error,sq_error,repeated_ratio,seed,"
         "status\n";
  for (const SweepRecord& rec : records) {
    out << csv_field(rec.map) << ',' << rec.n << ',' << rec.m << ','
        << strategy_name(rec.strategy) << ',' << format_g12(rec.h_true) << ','
        << format_g12(rec.h_hat) << ',' << format_g12(rec.error) << ','
        << format_g12(rec.sq_error) << ',' << format_g12(rec.repeated_ratio)
        << ',' << rec.seed << ',' << csv_field(rec.status) << '\n';
  }
}

void write_aggregates_csv(std::ostream& out,
                          std::span<const AggregateRow> rows) {
  out << "group_kind,bin_low,bin_high,m,strategy,mse,bias,count\n";
  for (const AggregateRow& row : rows) {
    out << group_kind_name(row.group) << ',' << format_g12(row.bin_low) << ','
        << format_g12(row.bin_high) << ',' << row.m << ','
        << strategy_name(row.strategy) << ',' << format_g12(row.mse) << ','
        << format_g12(row.bias) << ',' << row.count << '\n';
  }
}

}  // namespace tiedpe
