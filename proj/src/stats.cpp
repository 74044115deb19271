#include "tiedpe/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "tiedpe/entropy.hpp"
#include "tiedpe/errors.hpp"
#include "tiedpe/format.hpp"
#include "tiedpe/ordinal.hpp"
#include "tiedpe/rng.hpp"

namespace fs = std::filesystem;

namespace tiedpe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string trimmed(std::string_view s) {
  const char* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

// exact two-sided p: enumerate every assignment of n1 ranks out of 1..N and
// count those at least as far from the mean of U as the observed statistic
double exact_two_sided_p(int n1, int n2, double u_obs) {
  const int n = n1 + n2;
  const double mu = 0.5 * n1 * n2;
  const double dev_obs = std::fabs(u_obs - mu) - 1e-12;
  std::vector<int> comb(n1);
  std::iota(comb.begin(), comb.end(), 1);  // ranks are 1-based
  const double offset = 0.5 * n1 * (n1 + 1);
  std::size_t hits = 0;
  std::size_t total = 0;
  while (true) {
    const double rank_sum = std::accumulate(comb.begin(), comb.end(), 0.0);
    if (std::fabs(rank_sum - offset - mu) >= dev_obs) ++hits;
    ++total;
    // advance to the next combination in lexicographic order
    int i = n1 - 1;
    while (i >= 0 && comb[i] == n - n1 + i + 1) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < n1; ++j) comb[j] = comb[j - 1] + 1;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

std::vector<double> read_series_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string token = trimmed(line);
    if (token.empty()) continue;
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": not a number: '" + token + "'");
    if (!std::isfinite(value))
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": value is not finite");
    values.push_back(value);
  }
  if (values.empty())
    throw IoError("file contains no values: " + path.string());
  return values;
}

MannWhitneyResult mann_whitney_u(std::span<const double> a,
                                 std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("mann_whitney_u: both groups must be non-empty");
  const int n1 = static_cast<int>(a.size());
  const int n2 = static_cast<int>(b.size());
  const int n = n1 + n2;

  std::vector<std::pair<double, int>> pooled;
  pooled.reserve(n);
  for (double v : a) pooled.emplace_back(v, 0);
  for (double v : b) pooled.emplace_back(v, 1);
  std::sort(pooled.begin(), pooled.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  // midranks and the tie term sum(t^3 - t)
  double rank_sum_a = 0.0;
  double tie_term = 0.0;
  bool any_tie = false;
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && pooled[j].first == pooled[i].first) ++j;
    const double midrank = 0.5 * (i + 1 + j);
    const int t = j - i;
    if (t > 1) {
      any_tie = true;
      tie_term += static_cast<double>(t) * t * t - t;
    }
    for (int k = i; k < j; ++k)
      if (pooled[k].second == 0) rank_sum_a += midrank;
    i = j;
  }

  MannWhitneyResult result;
  result.n1 = n1;
  result.n2 = n2;
  result.tie_correction_applied = any_tie;
  result.u1 = rank_sum_a - 0.5 * n1 * (n1 + 1);
  result.u2 = static_cast<double>(n1) * n2 - result.u1;
  result.mu = 0.5 * n1 * n2;

  const double prod = static_cast<double>(n1) * n2;
  const double var =
      prod / 12.0 *
      ((n + 1) - tie_term / (static_cast<double>(n) * (n - 1)));
  result.sigma = var > 0 ? std::sqrt(var) : 0.0;

  if (result.sigma > 0) {
    const double shift =
        std::max(0.0, std::fabs(result.u1 - result.mu) - 0.5);
    result.z = shift / result.sigma;
    result.p = std::erfc(result.z / std::numbers::sqrt2);
  } else {
    result.z = 0.0;
    result.p = 1.0;
  }

  if (!any_tie && n <= 12) {
    result.exact = true;
    result.p = exact_two_sided_p(n1, n2, result.u1);
  }
  result.p = std::clamp(result.p, 0.0, 1.0);
  return result;
}

namespace {

std::vector<fs::path> list_series_files(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw IoError("not a readable directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list directory: " + dir.string());
  std::sort(files.begin(), files.end(),
            [](const fs::path& x, const fs::path& y) {
              return x.filename().string() < y.filename().string();
            });
  if (files.empty())
    throw IoError("no input files in directory: " + dir.string());
  return files;
}

}  // namespace

GroupCompareResult group_compare(const fs::path& dir_a,
                                 const fs::path& dir_b, int m,
                                 StrategyKind strategy,
                                 const StrategyOptions& options) {
  if (requires_seed(strategy, options.bayes_mode) && !options.seed)
    throw std::invalid_argument("strategy " +
                                std::string(strategy_name(strategy)) +
                                " needs a seed in this mode");

  GroupCompareResult result;
  result.m = m;
  result.strategy = strategy;

  const std::vector<fs::path> files_a = list_series_files(dir_a);
  const std::vector<fs::path> files_b = list_series_files(dir_b);

  std::vector<double> h_a;
  std::vector<double> h_b;
  std::uint64_t row_index = 0;
  auto process = [&](const std::vector<fs::path>& files, int group,
                     std::vector<double>& sink) {
    for (const fs::path& file : files) {
      FileEntropyRow row;
      row.file = file.filename().string();
      row.group = group;
      row.h = kNaN;
      try {
        const std::vector<double> series = read_series_file(file);
        const auto windows = embed(series, m);
        StrategyOptions file_options = options;
        if (options.seed)
          file_options.seed = derive_seed(*options.seed, row_index);
        const auto dist = apply_strategy(strategy, windows, file_options);
        row.h = shannon_entropy(dist).h;
        sink.push_back(row.h);
      } catch (const std::exception& e) {
        row.status = e.what();
      }
      ++row_index;
      result.rows.push_back(std::move(row));
    }
  };
  process(files_a, 1, h_a);
  process(files_b, 2, h_b);

  if (h_a.empty())
    throw StrategyError("group A produced no usable entropies: " +
                        dir_a.string());
  if (h_b.empty())
    throw StrategyError("group B produced no usable entropies: " +
                        dir_b.string());

  result.test = mann_whitney_u(h_a, h_b);
  return result;
}

void write_compare_csv(std::ostream& out, const GroupCompareResult& result) {
  out << "file,group,m,strategy,h_hat,status\n";
  for (const FileEntropyRow& row : result.rows) {
    out << csv_field(row.file) << ',' << row.group << ',' << result.m << ','
        << strategy_name(result.strategy) << ',' << format_g12(row.h) << ','
        << csv_field(row.status) << '\n';
  }
}

}  // namespace tiedpe
