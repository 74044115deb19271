#pragma once

#include <cstddef>
#include <cstdint>

#include "tiedpe/distribution.hpp"

namespace tiedpe {

enum class LogBase : std::uint8_t { Natural = 0, Two = 1, Ten = 2 };

std::string_view log_base_name(LogBase base);
LogBase parse_log_base(std::string_view name);  // "e" | "2" | "10"

struct EntropyResult {
  double h = 0.0;             ///< Shannon entropy in the requested base
  double h_normalized = 0.0;  ///< h / log(alphabet size), base-independent
  int m = 0;
  SymbolKind kind = SymbolKind::Permutation;
  std::size_t missing_patterns = 0;  ///< alphabet size − support size
};

/// Number of symbols in the alphabet: m! for Permutation; for the extended
/// kinds, the count of their distinct codes over all weak orders of m
/// positions (closed-form recurrences). Exact for every m <= kMaxEmbedding
/// (all values below 2^53). Throws std::invalid_argument for m outside
/// [2, kMaxEmbedding].
double alphabet_size(SymbolKind kind, int m);

/// H = −Σ p log p with 0·log 0 = 0, p = count/total. Throws
/// std::invalid_argument on an empty distribution (total = 0).
EntropyResult shannon_entropy(const SymbolDistribution& dist,
                              LogBase base = LogBase::Natural);

/// Alphabet size minus the number of symbols observed with positive count.
std::size_t missing_patterns(const SymbolDistribution& dist);

}  // namespace tiedpe
