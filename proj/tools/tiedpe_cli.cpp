// tiedpe: permutation-entropy toolkit for time series with tied values.
//
// Subcommands:
//   entropy             per-file permutation entropy under a tie strategy
//   sweep               simulation sweep over coarsened chaotic maps
//   compare             Mann-Whitney comparison of two directories of series
//   enumerate-alphabet  list or count the symbols of an ordinal alphabet
//
// Exit codes: 0 success, 2 bad flags/validation, 3 IO or parse failure,
// 4 strategy or simulation failure. Errors print a single machine-readable
// line on stderr: error code=<n> message="<text>".

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tiedpe/entropy.hpp"
#include "tiedpe/errors.hpp"
#include "tiedpe/experiment.hpp"
#include "tiedpe/format.hpp"
#include "tiedpe/maps.hpp"
#include "tiedpe/ordinal.hpp"
#include "tiedpe/stats.hpp"
#include "tiedpe/strategies.hpp"

namespace fs = std::filesystem;
using namespace tiedpe;

namespace {

int fail(int code, const std::string& message) {
  std::string escaped;
  escaped.reserve(message.size());
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    escaped += c;
  }
  std::cerr << "error code=" << code << " message=\"" << escaped << "\"\n";
  return code;
}

struct CommonStrategyArgs {
  std::string strategy;
  std::string mapping = "rank";
  std::string bayes_mode = "expected";
  std::uint64_t seed = 0;
  bool has_seed = false;

  StrategyKind kind() const { return parse_strategy(strategy); }

  StrategyOptions options() const {
    StrategyOptions opt;
    opt.mapping =
        mapping == "chronological" ? Mapping::Chronological : Mapping::Rank;
    opt.bayes_mode = bayes_mode == "sampled" ? BayesMode::Sampled
                                             : BayesMode::ExpectedCount;
    if (has_seed) opt.seed = seed;
    return opt;
  }

  void check_seed() const {
    if (requires_seed(kind(), options().bayes_mode) && !has_seed)
      throw std::invalid_argument("--seed is required for strategy '" +
                                  strategy + "' in this mode");
  }
};

void add_strategy_flags(CLI::App* cmd, CommonStrategyArgs& args) {
  cmd->add_option("--strategy", args.strategy, "tie-handling strategy")
      ->required()
      ->check(CLI::IsMember({"chrono-ext", "rank-ext", "complete-cases",
                             "time-ordered", "random-imp", "bayes-imp"}));
  cmd->add_option("--mapping", args.mapping,
                  "symbol mapping for permutation-alphabet strategies")
      ->check(CLI::IsMember({"rank", "chronological"}))
      ->capture_default_str();
  cmd->add_option("--bayes-mode", args.bayes_mode,
                  "bayes-imp weighting: deterministic expected counts or "
                  "per-window sampling")
      ->check(CLI::IsMember({"expected", "sampled"}))
      ->capture_default_str();
  cmd->add_option("--seed", args.seed,
                  "seed for randomized strategies (required there)")
      ->each([&args](const std::string&) { args.has_seed = true; });
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path.string());
  return out;
}

int run_entropy(const std::string& file, int m, int delay,
                const CommonStrategyArgs& args, const std::string& log_base,
                bool header) {
  args.check_seed();
  const LogBase base = parse_log_base(log_base);
  const std::vector<double> series = read_series_file(file);
  const std::vector<Window> windows = embed(series, m, delay);
  const double ratio = repeated_ratio(windows);
  const SymbolDistribution dist =
      apply_strategy(args.kind(), windows, args.options());
  const EntropyResult result = shannon_entropy(dist, base);
  if (header)
    std::cout << "h,h_normalized,repeated_ratio,missing_patterns,"
                 "windows_retained,windows_seen\n";
  std::cout << format_g12(result.h) << ',' << format_g12(result.h_normalized)
            << ',' << format_g12(ratio) << ',' << result.missing_patterns
            << ',' << dist.windows_retained() << ',' << dist.windows_seen()
            << '\n';
  return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_dir,
                  std::optional<std::uint64_t> seed_override) {
  const Config config = load_config(config_path);
  SweepConfig sweep = sweep_config_from(config);
  if (seed_override) sweep.master_seed = *seed_override;

  const std::vector<SweepRecord> records = run_sweep(sweep);
  std::size_t succeeded = 0;
  for (const SweepRecord& rec : records) succeeded += rec.ok();

  const std::vector<AggregateRow> rows = aggregate(records);
  std::vector<AggregateRow> by_ratio;
  std::vector<AggregateRow> by_level;
  for (const AggregateRow& row : rows)
    (row.group == GroupKind::RepeatedRatio ? by_ratio : by_level)
        .push_back(row);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  const fs::path records_path = fs::path(out_dir) / "records.csv";
  const fs::path ratio_path =
      fs::path(out_dir) / "aggregate_repeated_ratio.csv";
  const fs::path level_path =
      fs::path(out_dir) / "aggregate_h_true_quartile.csv";
  {
    auto out = open_output(records_path);
    write_records_csv(out, records);
  }
  {
    auto out = open_output(ratio_path);
    write_aggregates_csv(out, by_ratio);
  }
  {
    auto out = open_output(level_path);
    write_aggregates_csv(out, by_level);
  }

  std::cout << "cells=" << records.size() << " ok=" << succeeded
            << " failed=" << records.size() - succeeded << '\n';
  std::cout << "wrote " << records_path.string() << " (" << records.size()
            << " rows)\n";
  std::cout << "wrote " << ratio_path.string() << " (" << by_ratio.size()
            << " rows)\n";
  std::cout << "wrote " << level_path.string() << " (" << by_level.size()
            << " rows)\n";
  if (succeeded == 0)
    return fail(4, "sweep produced no successful cells");
  return 0;
}

int run_compare(const std::string& dir_a, const std::string& dir_b, int m,
                const CommonStrategyArgs& args) {
  const GroupCompareResult result =
      group_compare(dir_a, dir_b, m, args.kind(), args.options());
  write_compare_csv(std::cout, result);
  const MannWhitneyResult& t = result.test;
  std::cout << "U=" << format_g12(t.u1) << " z=" << format_g12(t.z)
            << " p=" << format_g12(t.p) << " n1=" << t.n1 << " n2=" << t.n2
            << " exact=" << (t.exact ? "true" : "false") << '\n';
  return 0;
}

int run_enumerate(const std::string& kind_name, int m, bool count_only) {
  SymbolKind kind = SymbolKind::Permutation;
  if (kind_name == "chrono-ext")
    kind = SymbolKind::ChronologicalExtended;
  else if (kind_name == "rank-ext")
    kind = SymbolKind::RankExtended;
  const std::vector<Symbol> alphabet = enumerate_alphabet(kind, m);
  if (count_only) {
    std::cout << alphabet.size() << '\n';
  } else {
    for (const Symbol& symbol : alphabet) std::cout << symbol.to_string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "permutation entropy for time series with tied values: six "
      "tie-handling strategies, simulation sweeps, two-group comparison"};
  app.require_subcommand(1);

  // entropy
  auto* entropy_cmd = app.add_subcommand(
      "entropy", "compute permutation entropy of one series file");
  std::string entropy_file;
  int entropy_m = 0;
  int entropy_delay = 1;
  std::string entropy_log_base = "e";
  bool entropy_header = false;
  CommonStrategyArgs entropy_args;
  entropy_cmd->add_option("file", entropy_file, "one value per line")
      ->required();
  entropy_cmd->add_option("--m", entropy_m, "embedding dimension")
      ->required()
      ->check(CLI::Range(2, 7));
  entropy_cmd->add_option("--delay", entropy_delay, "embedding delay")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_strategy_flags(entropy_cmd, entropy_args);
  entropy_cmd->add_option("--log-base", entropy_log_base, "entropy log base")
      ->check(CLI::IsMember({"e", "2", "10"}))
      ->capture_default_str();
  entropy_cmd->add_flag("--header", entropy_header,
                        "print a CSV header line first");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "run the map-coarsening sweep described by a config file");
  std::string sweep_config;
  std::string sweep_out = ".";
  if (const char* env = std::getenv("TIEDPE_OUT_DIR")) sweep_out = env;
  std::uint64_t sweep_seed = 0;
  bool sweep_has_seed = false;
  sweep_cmd->add_option("config", sweep_config, "sweep config file")
      ->required();
  sweep_cmd
      ->add_option("--out", sweep_out,
                   "output directory (default: $TIEDPE_OUT_DIR or .)")
      ->capture_default_str();
  sweep_cmd
      ->add_option("--seed", sweep_seed, "override the config master seed")
      ->each([&sweep_has_seed](const std::string&) { sweep_has_seed = true; });

  // compare
  auto* compare_cmd = app.add_subcommand(
      "compare",
      "Mann-Whitney comparison of per-file entropies from two directories");
  std::string compare_a;
  std::string compare_b;
  int compare_m = 0;
  CommonStrategyArgs compare_args;
  compare_cmd->add_option("dir_a", compare_a, "first group directory")
      ->required();
  compare_cmd->add_option("dir_b", compare_b, "second group directory")
      ->required();
  compare_cmd->add_option("--m", compare_m, "embedding dimension")
      ->required()
      ->check(CLI::Range(2, 7));
  add_strategy_flags(compare_cmd, compare_args);

  // enumerate-alphabet
  auto* enum_cmd = app.add_subcommand(
      "enumerate-alphabet", "list every symbol of an ordinal alphabet");
  std::string enum_kind;
  int enum_m = 0;
  bool enum_count_only = false;
  enum_cmd->add_option("--kind", enum_kind, "alphabet kind")
      ->required()
      ->check(CLI::IsMember({"permutation", "chrono-ext", "rank-ext"}));
  enum_cmd->add_option("--m", enum_m, "embedding dimension")
      ->required()
      ->check(CLI::Range(2, 7));
  enum_cmd->add_flag("--count-only", enum_count_only,
                     "print only the alphabet size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);  // prints CLI11's diagnostic to stderr
    return fail(2, e.what());
  }

  try {
    if (entropy_cmd->parsed())
      return run_entropy(entropy_file, entropy_m, entropy_delay, entropy_args,
                         entropy_log_base, entropy_header);
    if (sweep_cmd->parsed()) {
      std::optional<std::uint64_t> seed;
      if (sweep_has_seed) seed = sweep_seed;
      return run_sweep_cmd(sweep_config, sweep_out, seed);
    }
    if (compare_cmd->parsed()) {
      compare_args.check_seed();
      return run_compare(compare_a, compare_b, compare_m, compare_args);
    }
    if (enum_cmd->parsed())
      return run_enumerate(enum_kind, enum_m, enum_count_only);
  } catch (const std::invalid_argument& e) {
    return fail(2, e.what());
  } catch (const IoError& e) {
    return fail(3, e.what());
  } catch (const TiedPeError& e) {
    return fail(4, e.what());
  } catch (const std::exception& e) {
    return fail(4, e.what());
  }
  return 0;
}
