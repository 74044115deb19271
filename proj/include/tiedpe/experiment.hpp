#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tiedpe/config.hpp"
#include "tiedpe/maps.hpp"
#include "tiedpe/strategies.hpp"

namespace tiedpe {

/// The (map × n × m × strategy) grid plus shared knobs. Defaults mirror the
/// published evaluation: four lengths, m = 3..6, all six strategies, one
/// decimal of truncation, deterministic Bayesian mode.
struct SweepConfig {
  std::vector<MapSpec> maps;  ///< empty → default_catalog()
  std::vector<std::size_t> lengths{5000, 10000, 30000, 90000};
  std::vector<int> dims{3, 4, 5, 6};
  std::vector<StrategyKind> strategies{kAllStrategies,
                                       kAllStrategies + 6};
  int truncate_digits = 1;
  int delay = 1;
  std::uint64_t master_seed = 42;
  BayesMode bayes_mode = BayesMode::ExpectedCount;
};

/// Reads `[sweep]` (keys: lengths, dims, strategies, truncate_decimals,
/// delay, seed, bayes_mode) and any `[map <name>]` sections; absent keys
/// keep their defaults, absent map sections select the default catalog.
SweepConfig sweep_config_from(const Config& config);

/// One grid cell. `seed` is the cell's derived seed (recorded for every
/// strategy, consumed only by the sampled ones). `status` is "ok" or a
/// failure message; failed cells carry NaN metrics.
struct SweepRecord {
  std::string map;
  std::size_t n = 0;
  int m = 0;
  StrategyKind strategy = StrategyKind::ChronologicalExtended;
  double h_true = 0.0;
  double h_hat = 0.0;
  double error = 0.0;
  double sq_error = 0.0;
  double repeated_ratio = 0.0;
  std::uint64_t seed = 0;
  std::string status = "ok";

  bool ok() const { return status == "ok"; }
};

/// Runs the grid serially in deterministic order (maps in config order,
/// then n, then m, then strategy). For each (map, n): generates the orbit
/// once, computes the ground-truth entropy per m from the untruncated orbit
/// (rank mapping; catalog orbits are tie-free), truncates, and evaluates
/// each strategy on the truncated windows. Per-cell strategy failures
/// become status rows, never aborts. Cell seeds are
/// derive_seed(master_seed, cell_index) with cell_index counting every grid
/// cell in output order.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

enum class GroupKind : std::uint8_t { RepeatedRatio = 0, HTrueQuartile = 1 };

std::string_view group_kind_name(GroupKind kind);

/// One aggregation bucket: mean squared error and mean error of the ok
/// cells of one strategy at one m whose grouping value falls in
/// [bin_low, bin_high).
struct AggregateRow {
  GroupKind group = GroupKind::RepeatedRatio;
  double bin_low = 0.0;
  double bin_high = 0.0;
  int m = 0;
  StrategyKind strategy = StrategyKind::ChronologicalExtended;
  double mse = 0.0;
  double bias = 0.0;
  std::size_t count = 0;
};

/// Buckets ok records two ways: repeated-ratio deciles [0,0.1) .. [0.9,1],
/// and empirical quartiles of normalized true entropy (h_true / log m!,
/// quartile edges computed over the distinct (map, n, m) cells of the
/// record set). Rows with count = 0 are omitted.
std::vector<AggregateRow> aggregate(std::span<const SweepRecord> records);

/// CSV emitters. Headers:
///   map,n,m,strategy,h_true,h_hat,error,sq_error,repeated_ratio,seed,status
///   group_kind,bin_low,bin_high,m,strategy,mse,bias,count
/// RFC-4180 quoting, floats at 12 significant digits, LF endings.
void write_records_csv(std::ostream& out, std::span<const SweepRecord> records);
void write_aggregates_csv(std::ostream& out, std::span<const AggregateRow> rows);

}  // namespace tiedpe
