#include "tiedpe/strategies.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "tiedpe/errors.hpp"
#include "tiedpe/rng.hpp"

namespace tiedpe {

namespace {

using Code = std::array<std::uint8_t, kMaxEmbedding>;

/// Largest compatible set a single window may enumerate (product of
/// tie-group factorials). Only pathological tie structures at large m can
/// exceed it; the sweep's m <= 6 tops out at 6! = 720.
constexpr double kMaxCompatible = 1e6;

int check_windows(std::span<const Window> windows) {
  if (windows.empty())
    throw std::invalid_argument("no windows to symbolize");
  const int m = windows.front().m;
  for (const auto& w : windows)
    if (w.m != m)
      throw std::invalid_argument("windows have mixed embedding dimensions");
  return m;
}

/// Stable insertion sort of slot indexes by value; equal values keep
/// chronological order, so the first index of an equal run is its group's
/// smallest.
void sorted_slots(const Window& w, std::uint8_t* idx) {
  const int m = w.m;
  for (int i = 0; i < m; ++i) idx[i] = static_cast<std::uint8_t>(i);
  for (int i = 1; i < m; ++i) {
    const std::uint8_t key = idx[i];
    const double v = w[key];
    int j = i - 1;
    while (j >= 0 && w[idx[j]] > v) {
      idx[j + 1] = idx[j];
      --j;
    }
    idx[j + 1] = key;
  }
}

void chrono_ext_code(const Window& w, std::uint8_t* code) {
  Code idx;
  sorted_slots(w, idx.data());
  const int m = w.m;
  int i = 0;
  while (i < m) {
    const double v = w[idx[i]];
    int j = i;
    while (j < m && w[idx[j]] == v) ++j;
    const std::uint8_t group_min = static_cast<std::uint8_t>(idx[i] + 1);
    for (int k = i; k < j; ++k) code[k] = group_min;
    i = j;
  }
}

void time_ordered_code(const Window& w, std::uint8_t* code) {
  Code idx;
  sorted_slots(w, idx.data());
  for (int r = 0; r < w.m; ++r)
    code[idx[r]] = static_cast<std::uint8_t>(r + 1);
}

std::uint64_t pack_code(const std::uint8_t* c, int m) {
  return pack_entries(std::span<const std::uint8_t>(c, m));
}

void unpack_code(std::uint64_t packed, int m, std::uint8_t* out) {
  for (int i = 0; i < m; ++i)
    out[i] =
        static_cast<std::uint8_t>(((packed >> (4 * (m - 1 - i))) & 0xF) + 1);
}

std::uint64_t invert_packed(std::uint64_t packed, int m) {
  Code c, inv;
  unpack_code(packed, m, c.data());
  for (int i = 0; i < m; ++i)
    inv[c[i] - 1] = static_cast<std::uint8_t>(i + 1);
  return pack_code(inv.data(), m);
}

/// Accumulates packed rank codes, optionally relabeling each emitted symbol
/// with its inverse permutation (the chronological convention).
struct PermEmitter {
  Mapping mapping;
  int m;
  std::unordered_map<std::uint64_t, double> table;

  void emit(const std::uint8_t* rank_code, double weight) {
    emit_packed(pack_code(rank_code, m), weight);
  }
  void emit_packed(std::uint64_t rank_packed, double weight) {
    if (mapping == Mapping::Chronological)
      rank_packed = invert_packed(rank_packed, m);
    table[rank_packed] += weight;
  }
};

SymbolDistribution to_distribution(
    SymbolKind kind, int m, const std::unordered_map<std::uint64_t, double>& t,
    std::size_t seen, std::size_t retained) {
  std::vector<std::pair<Symbol, double>> counts;
  counts.reserve(t.size());
  for (const auto& [packed, c] : t)
    counts.emplace_back(detail::symbol_from_packed_unchecked(kind, m, packed),
                        c);
  return SymbolDistribution(kind, m, std::move(counts), seen, retained);
}

struct TieGroup {
  std::uint8_t rank;              // lowest rank of the group
  std::uint8_t size;
  std::array<std::uint8_t, kMaxEmbedding> slots;  // ascending
};

/// Splits a min-ranks code into its tie groups, ranks ascending.
int tie_groups(const std::uint8_t* mr, int m, TieGroup* groups) {
  int n = 0;
  for (int r = 1; r <= m; ++r) {
    std::uint8_t k = 0;
    std::array<std::uint8_t, kMaxEmbedding> slots;
    for (int i = 0; i < m; ++i)
      if (mr[i] == r) slots[k++] = static_cast<std::uint8_t>(i);
    if (k == 0) continue;
    groups[n].rank = static_cast<std::uint8_t>(r);
    groups[n].size = k;
    groups[n].slots = slots;
    ++n;
  }
  return n;
}

/// All packed rank permutations reachable by ordering each tie group every
/// possible way. Sorted ascending. Throws StrategyError when the product of
/// group factorials exceeds kMaxCompatible.
std::vector<std::uint64_t> enumerate_compatible(const std::uint8_t* mr,
                                                int m) {
  std::array<TieGroup, kMaxEmbedding> groups;
  const int n_groups = tie_groups(mr, m, groups.data());
  double total = 1.0;
  for (int g = 0; g < n_groups; ++g)
    for (int k = 2; k <= groups[g].size; ++k) total *= k;
  if (total > kMaxCompatible)
    throw StrategyError(
        "compatible set too large to enumerate (" + std::to_string(total) +
        " members); reduce the embedding dimension or tie density");

  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(total));
  Code code{};
  std::array<std::array<std::uint8_t, kMaxEmbedding>, kMaxEmbedding> perms;

  auto rec = [&](auto&& self, int g) -> void {
    if (g == n_groups) {
      out.push_back(pack_code(code.data(), m));
      return;
    }
    const TieGroup& grp = groups[g];
    auto& perm = perms[g];
    for (int j = 0; j < grp.size; ++j)
      perm[j] = static_cast<std::uint8_t>(grp.rank + j);
    do {
      for (int j = 0; j < grp.size; ++j) code[grp.slots[j]] = perm[j];
      self(self, g + 1);
    } while (std::next_permutation(perm.begin(), perm.begin() + grp.size));
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::ChronologicalExtended:
      return "chrono-ext";
    case StrategyKind::RankExtended:
      return "rank-ext";
    case StrategyKind::CompleteCases:
      return "complete-cases";
    case StrategyKind::TimeOrdered:
      return "time-ordered";
    case StrategyKind::RandomImputation:
      return "random-imp";
    case StrategyKind::BayesianImputation:
      return "bayes-imp";
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view name) {
  for (StrategyKind k : kAllStrategies)
    if (strategy_name(k) == name) return k;
  throw std::invalid_argument(
      "unknown strategy '" + std::string(name) +
      "' (expected chrono-ext, rank-ext, complete-cases, time-ordered, "
      "random-imp, or bayes-imp)");
}

SymbolKind alphabet_kind(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::ChronologicalExtended:
      return SymbolKind::ChronologicalExtended;
    case StrategyKind::RankExtended:
      return SymbolKind::RankExtended;
    default:
      return SymbolKind::Permutation;
  }
}

bool requires_seed(StrategyKind kind, BayesMode mode) {
  return kind == StrategyKind::RandomImputation ||
         (kind == StrategyKind::BayesianImputation &&
          mode == BayesMode::Sampled);
}

Symbol chronological_extended_symbol(const Window& w) {
  Code code;
  chrono_ext_code(w, code.data());
  return detail::symbol_from_packed_unchecked(
      SymbolKind::ChronologicalExtended, w.m, pack_code(code.data(), w.m));
}

Symbol rank_extended_symbol(const Window& w) {
  Code mr;
  min_ranks(w, mr.data());
  return detail::symbol_from_packed_unchecked(SymbolKind::RankExtended, w.m,
                                              pack_code(mr.data(), w.m));
}

Symbol time_ordered_symbol(const Window& w) {
  Code code;
  time_ordered_code(w, code.data());
  return detail::symbol_from_packed_unchecked(SymbolKind::Permutation, w.m,
                                              pack_code(code.data(), w.m));
}

std::vector<Symbol> compatible_symbols(const Window& w) {
  Code mr;
  min_ranks(w, mr.data());
  std::vector<std::uint64_t> packed = enumerate_compatible(mr.data(), w.m);
  std::vector<Symbol> out;
  out.reserve(packed.size());
  for (std::uint64_t p : packed)
    out.push_back(
        detail::symbol_from_packed_unchecked(SymbolKind::Permutation, w.m, p));
  return out;
}

SymbolDistribution chronological_extended(std::span<const Window> windows) {
  const int m = check_windows(windows);
  std::unordered_map<std::uint64_t, double> table;
  Code code;
  for (const auto& w : windows) {
    chrono_ext_code(w, code.data());
    table[pack_code(code.data(), m)] += 1.0;
  }
  return to_distribution(SymbolKind::ChronologicalExtended, m, table,
                         windows.size(), windows.size());
}

SymbolDistribution rank_extended(std::span<const Window> windows) {
  const int m = check_windows(windows);
  std::unordered_map<std::uint64_t, double> table;
  Code mr;
  for (const auto& w : windows) {
    min_ranks(w, mr.data());
    table[pack_code(mr.data(), m)] += 1.0;
  }
  return to_distribution(SymbolKind::RankExtended, m, table, windows.size(),
                         windows.size());
}

SymbolDistribution complete_cases(std::span<const Window> windows,
                                  Mapping mapping) {
  const int m = check_windows(windows);
  PermEmitter em{mapping, m, {}};
  std::size_t retained = 0;
  Code mr;
  for (const auto& w : windows) {
    if (has_ties(w)) continue;
    min_ranks(w, mr.data());
    em.emit(mr.data(), 1.0);
    ++retained;
  }
  if (retained == 0)
    throw StrategyError("no complete cases: every window contains ties");
  return to_distribution(SymbolKind::Permutation, m, em.table, windows.size(),
                         retained);
}

SymbolDistribution time_ordered(std::span<const Window> windows,
                                Mapping mapping) {
  const int m = check_windows(windows);
  PermEmitter em{mapping, m, {}};
  Code code;
  for (const auto& w : windows) {
    time_ordered_code(w, code.data());
    em.emit(code.data(), 1.0);
  }
  return to_distribution(SymbolKind::Permutation, m, em.table, windows.size(),
                         windows.size());
}

SymbolDistribution random_imputation(std::span<const Window> windows,
                                     std::uint64_t seed, Mapping mapping) {
  const int m = check_windows(windows);
  PermEmitter em{mapping, m, {}};
  SplitMix64 rng(seed);
  Code mr, code;
  std::array<TieGroup, kMaxEmbedding> groups;
  std::array<std::uint8_t, kMaxEmbedding> offs;
  for (const auto& w : windows) {
    min_ranks(w, mr.data());
    if (!has_ties(w)) {
      em.emit(mr.data(), 1.0);
      continue;
    }
    // Independently shuffling the rank block of each tie group draws
    // uniformly from the compatible set without enumerating it. The RNG is
    // consumed per tied window, groups in ascending rank order,
    // Fisher-Yates from the back.
    const int n_groups = tie_groups(mr.data(), m, groups.data());
    for (int g = 0; g < n_groups; ++g) {
      const TieGroup& grp = groups[g];
      for (int j = 0; j < grp.size; ++j)
        offs[j] = static_cast<std::uint8_t>(j);
      for (int j = grp.size - 1; j > 0; --j) {
        const auto t = static_cast<int>(
            rng.uniform_below(static_cast<std::uint64_t>(j) + 1));
        std::swap(offs[j], offs[t]);
      }
      for (int j = 0; j < grp.size; ++j)
        code[grp.slots[j]] = static_cast<std::uint8_t>(grp.rank + offs[j]);
    }
    em.emit(code.data(), 1.0);
  }
  return to_distribution(SymbolKind::Permutation, m, em.table, windows.size(),
                         windows.size());
}

SymbolDistribution bayesian_imputation(std::span<const Window> windows,
                                       BayesMode mode,
                                       std::optional<std::uint64_t> seed,
                                       Mapping mapping) {
  const int m = check_windows(windows);
  if (mode == BayesMode::Sampled && !seed)
    throw std::invalid_argument(
        "bayes-imp in sampled mode requires an explicit seed");

  // Pass 1: the complete-cases prior, in rank space. Raw counts suffice —
  // the per-set renormalization cancels the denominator.
  std::unordered_map<std::uint64_t, double> prior;
  std::size_t prior_n = 0;
  Code mr;
  for (const auto& w : windows) {
    if (has_ties(w)) continue;
    min_ranks(w, mr.data());
    prior[pack_code(mr.data(), m)] += 1.0;
    ++prior_n;
  }
  if (prior_n == 0)
    throw StrategyError(
        "empty prior: no tie-free windows to form the complete-cases prior");

  // Pass 2: tied windows spend unit mass over their compatible set.
  struct CompatWeights {
    std::vector<std::uint64_t> members;  // sorted ascending
    std::vector<double> weights;         // renormalized prior, or uniform
  };
  std::unordered_map<std::uint64_t, CompatWeights> cache;
  PermEmitter em{mapping, m, {}};
  std::optional<SplitMix64> rng;
  if (mode == BayesMode::Sampled) rng.emplace(*seed);

  for (const auto& w : windows) {
    min_ranks(w, mr.data());
    if (!has_ties(w)) {
      em.emit(mr.data(), 1.0);
      continue;
    }
    const std::uint64_t key = pack_code(mr.data(), m);
    auto [it, inserted] = cache.try_emplace(key);
    CompatWeights& cw = it->second;
    if (inserted) {
      cw.members = enumerate_compatible(mr.data(), m);
      cw.weights.resize(cw.members.size());
      double mass = 0.0;
      for (std::size_t i = 0; i < cw.members.size(); ++i) {
        auto p = prior.find(cw.members[i]);
        cw.weights[i] = (p == prior.end()) ? 0.0 : p->second;
        mass += cw.weights[i];
      }
      if (mass > 0.0) {
        for (double& wt : cw.weights) wt /= mass;
      } else {
        // Every compatible symbol is forbidden in the complete cases; fall
        // back to a uniform draw so the window still contributes unit mass.
        const double u = 1.0 / static_cast<double>(cw.weights.size());
        for (double& wt : cw.weights) wt = u;
      }
    }
    if (mode == BayesMode::ExpectedCount) {
      for (std::size_t i = 0; i < cw.members.size(); ++i)
        if (cw.weights[i] > 0.0) em.emit_packed(cw.members[i], cw.weights[i]);
    } else {
      const double u = rng->uniform01();
      double acc = 0.0;
      std::size_t chosen = cw.members.size() - 1;
      for (std::size_t i = 0; i < cw.members.size(); ++i) {
        acc += cw.weights[i];
        if (u < acc) {
          chosen = i;
          break;
        }
      }
      em.emit_packed(cw.members[chosen], 1.0);
    }
  }
  return to_distribution(SymbolKind::Permutation, m, em.table, windows.size(),
                         windows.size());
}

SymbolDistribution apply_strategy(StrategyKind kind,
                                  std::span<const Window> windows,
                                  const StrategyOptions& options) {
  if (requires_seed(kind, options.bayes_mode) && !options.seed)
    throw std::invalid_argument(std::string(strategy_name(kind)) +
                                " requires an explicit seed");
  switch (kind) {
    case StrategyKind::ChronologicalExtended:
      return chronological_extended(windows);
    case StrategyKind::RankExtended:
      return rank_extended(windows);
    case StrategyKind::CompleteCases:
      return complete_cases(windows, options.mapping);
    case StrategyKind::TimeOrdered:
      return time_ordered(windows, options.mapping);
    case StrategyKind::RandomImputation:
      return random_imputation(windows, *options.seed, options.mapping);
    case StrategyKind::BayesianImputation:
      return bayesian_imputation(windows, options.bayes_mode, options.seed,
                                 options.mapping);
  }
  throw std::invalid_argument("unknown strategy kind");
}

std::vector<Symbol> enumerate_alphabet(SymbolKind kind, int m) {
  if (m < 2 || m > 7)
    throw std::invalid_argument(
        "enumerate_alphabet supports m in [2, 7], got " + std::to_string(m));

  // Walk every ordered set partition of the m slots (weak order): each
  // block, in order, is any nonempty subset of the remaining slots and
  // represents the next higher value level. A representative window with
  // value = block ordinal realizes the weak order exactly.
  std::vector<double> values(m, 0.0);
  std::vector<std::uint64_t> codes;
  Code buf;
  const unsigned full = (1u << m) - 1u;

  auto symbolize = [&](bool tied) {
    const Window w{values.data(), m, 1, 0};
    if (kind == SymbolKind::Permutation) {
      if (tied) return;
      min_ranks(w, buf.data());
      codes.push_back(pack_code(buf.data(), m));
    } else if (kind == SymbolKind::RankExtended) {
      min_ranks(w, buf.data());
      codes.push_back(pack_code(buf.data(), m));
    } else {
      chrono_ext_code(w, buf.data());
      codes.push_back(pack_code(buf.data(), m));
    }
  };

  auto rec = [&](auto&& self, unsigned remaining, int level,
                 bool tied) -> void {
    if (remaining == 0) {
      symbolize(tied);
      return;
    }
    for (unsigned sub = remaining; sub != 0; sub = (sub - 1) & remaining) {
      for (int i = 0; i < m; ++i)
        if (sub & (1u << i)) values[i] = static_cast<double>(level);
      self(self, remaining & ~sub, level + 1,
           tied || (std::popcount(sub) > 1));
    }
  };
  rec(rec, full, 0, false);

  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<Symbol> out;
  out.reserve(codes.size());
  for (std::uint64_t p : codes)
    out.push_back(detail::symbol_from_packed_unchecked(kind, m, p));
  return out;
}

}  // namespace tiedpe
