#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tiedpe/strategies.hpp"

namespace tiedpe {

/// Reads one numeric value per line (whitespace-trimmed; blank lines and
/// lines starting with '#' skipped). Throws IoError for a missing or
/// unreadable file, an unparseable or non-finite value (naming the line
/// number), or a file with no values.
std::vector<double> read_series_file(const std::filesystem::path& path);

struct MannWhitneyResult {
  double u1 = 0.0;      ///< rank-sum statistic of the first group
  double u2 = 0.0;      ///< n1*n2 − u1
  double mu = 0.0;      ///< n1*n2/2
  double sigma = 0.0;   ///< tie-corrected standard deviation of U
  double z = 0.0;       ///< continuity-corrected standardized deviate
  double p = 1.0;       ///< two-sided p-value
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  bool exact = false;   ///< p from exhaustive enumeration (small, tie-free)
  bool tie_correction_applied = false;
};

/// Two-sided Mann–Whitney U from joint midranks. Exact enumeration of all
/// C(n1+n2, n1) rank assignments when n1+n2 <= 12 and the pooled sample is
/// tie-free; otherwise the normal approximation with tie-corrected variance
/// and continuity correction. Throws std::invalid_argument on an empty
/// group.
MannWhitneyResult mann_whitney_u(std::span<const double> group_a,
                                 std::span<const double> group_b);

/// Per-file outcome of a group comparison; group is 1 or 2.
struct FileEntropyRow {
  std::string file;  ///< file name within its directory
  int group = 0;
  double h = 0.0;    ///< NaN when status != "ok"
  std::string status = "ok";
};

struct GroupCompareResult {
  std::vector<FileEntropyRow> rows;
  MannWhitneyResult test;
  int m = 0;
  StrategyKind strategy = StrategyKind::BayesianImputation;
};

/// Computes H(m) for every regular file of each directory (sorted by file
/// name) under one strategy, then tests the two entropy samples. Sampled
/// strategies draw their per-file seed as derive_seed(options.seed, row
/// index). Throws IoError for an unreadable or empty directory (naming it);
/// per-file failures become status rows; StrategyError if either group ends
/// up with zero successful entropies.
GroupCompareResult group_compare(const std::filesystem::path& dir_a,
                                 const std::filesystem::path& dir_b, int m,
                                 StrategyKind strategy,
                                 const StrategyOptions& options = {});

/// CSV emitter: header `file,group,m,strategy,h_hat,status`.
void write_compare_csv(std::ostream& out, const GroupCompareResult& result);

}  // namespace tiedpe
