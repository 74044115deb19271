#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tiedpe/distribution.hpp"
#include "tiedpe/ordinal.hpp"
#include "tiedpe/symbol.hpp"

namespace tiedpe {

/// The six tie-handling strategies. The first two keep tied windows by
/// extending the alphabet; the remaining four treat ties as missing data
/// over the classical permutation alphabet.
enum class StrategyKind : std::uint8_t {
  ChronologicalExtended = 0,
  RankExtended = 1,
  CompleteCases = 2,
  TimeOrdered = 3,
  RandomImputation = 4,
  BayesianImputation = 5,
};

inline constexpr StrategyKind kAllStrategies[] = {
    StrategyKind::ChronologicalExtended, StrategyKind::RankExtended,
    StrategyKind::CompleteCases,         StrategyKind::TimeOrdered,
    StrategyKind::RandomImputation,      StrategyKind::BayesianImputation,
};

/// Which permutation convention labels the symbols of the missing-data
/// strategies (extended alphabets define their own codes and ignore this).
/// Chronological labels are the inverse permutations of rank labels, so
/// entropy is identical either way.
enum class Mapping : std::uint8_t { Rank = 0, Chronological = 1 };

/// How Bayesian imputation spends the prior on each tied window: draw one
/// symbol per window (Sampled, needs a seed) or add the renormalized prior
/// weights as fractional counts (ExpectedCount, deterministic).
enum class BayesMode : std::uint8_t { ExpectedCount = 0, Sampled = 1 };

struct StrategyOptions {
  Mapping mapping = Mapping::Rank;
  BayesMode bayes_mode = BayesMode::ExpectedCount;
  std::optional<std::uint64_t> seed;  ///< required by the sampled paths
};

/// CLI-facing names: chrono-ext, rank-ext, complete-cases, time-ordered,
/// random-imp, bayes-imp.
std::string_view strategy_name(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);  // throws invalid_argument

/// Alphabet produced by a strategy (ChronologicalExtended / RankExtended /
/// Permutation for the rest).
SymbolKind alphabet_kind(StrategyKind kind);

/// True for RandomImputation always, and for BayesianImputation in Sampled
/// mode: these require an explicit seed.
bool requires_seed(StrategyKind kind, BayesMode mode);

// --- per-window mappings -------------------------------------------------

/// Sorts the window stably by value and writes, at each sorted slot, the
/// chronological index of that sample — collapsing each equal-value group to
/// its smallest index. Handles tied and tie-free windows alike.
Symbol chronological_extended_symbol(const Window& w);

/// min_ranks as a symbol: tied slots share their group's lowest rank.
Symbol rank_extended_symbol(const Window& w);

/// Breaks ties so the earlier sample gets the lower rank, then rank-maps.
Symbol time_ordered_symbol(const Window& w);

/// Every permutation reachable from the window by breaking each tie group
/// in some order (singleton {map_rank(w)} when tie-free). Sorted ascending.
std::vector<Symbol> compatible_symbols(const Window& w);

// --- stream folds ---------------------------------------------------------

SymbolDistribution chronological_extended(std::span<const Window> windows);
SymbolDistribution rank_extended(std::span<const Window> windows);

/// Drops tied windows; counts map_rank over the rest; total = retained.
/// Throws StrategyError("no complete cases") when every window is tied.
SymbolDistribution complete_cases(std::span<const Window> windows,
                                  Mapping mapping = Mapping::Rank);

SymbolDistribution time_ordered(std::span<const Window> windows,
                                Mapping mapping = Mapping::Rank);

/// Each tied window maps to a uniform draw over its compatible set.
SymbolDistribution random_imputation(std::span<const Window> windows,
                                     std::uint64_t seed,
                                     Mapping mapping = Mapping::Rank);

/// Two passes: a complete-cases prior p*, then every tied window spends its
/// unit mass over its compatible set with weights p*(pi) renormalized over
/// the set (uniform fallback when the set carries zero prior mass).
/// ExpectedCount adds the weights as fractional counts; Sampled draws one
/// symbol per tied window (seed required, else std::invalid_argument).
/// Throws StrategyError("empty prior") when no tie-free window exists.
SymbolDistribution bayesian_imputation(
    std::span<const Window> windows, BayesMode mode = BayesMode::ExpectedCount,
    std::optional<std::uint64_t> seed = std::nullopt,
    Mapping mapping = Mapping::Rank);

/// Dispatch by kind; validates the seed requirement (std::invalid_argument
/// when a sampled path lacks one).
SymbolDistribution apply_strategy(StrategyKind kind,
                                  std::span<const Window> windows,
                                  const StrategyOptions& options = {});

/// All distinct symbols of the alphabet: the m! permutations, or the image
/// of every weak order of m positions under the extended-alphabet rule.
/// Sorted ascending. Supports 2 <= m <= 7 (throws std::invalid_argument).
std::vector<Symbol> enumerate_alphabet(SymbolKind kind, int m);

}  // namespace tiedpe
