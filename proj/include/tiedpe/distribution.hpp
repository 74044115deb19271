#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tiedpe/symbol.hpp"

namespace tiedpe {

/// An estimated distribution over an ordinal alphabet: symbol/weight pairs
/// sorted by symbol, plus bookkeeping about how many windows produced it.
/// Weights are doubles because imputation strategies may contribute
/// fractional counts; for counting strategies they are integers.
class SymbolDistribution {
 public:
  /// Validates that every symbol matches (kind, m) and every weight is
  /// finite and > 0; duplicate symbols are merged by summing. Requires
  /// windows_retained <= windows_seen.
  SymbolDistribution(SymbolKind kind, int m,
                     std::vector<std::pair<Symbol, double>> counts,
                     std::size_t windows_seen, std::size_t windows_retained);

  SymbolKind kind() const noexcept { return kind_; }
  int embedding() const noexcept { return m_; }
  double total() const noexcept { return total_; }
  std::size_t windows_seen() const noexcept { return windows_seen_; }
  std::size_t windows_retained() const noexcept { return windows_retained_; }

  /// Symbols observed with positive weight, sorted ascending.
  const std::vector<std::pair<Symbol, double>>& counts() const noexcept {
    return counts_;
  }
  std::size_t support_size() const noexcept { return counts_.size(); }

  /// Weight of `s`, or 0 if absent.
  double count_of(const Symbol& s) const noexcept;

  /// count_of(s) / total(); 0 if the distribution is empty.
  double probability(const Symbol& s) const noexcept;

 private:
  std::vector<std::pair<Symbol, double>> counts_;
  double total_ = 0.0;
  std::size_t windows_seen_ = 0;
  std::size_t windows_retained_ = 0;
  std::uint8_t m_ = 0;
  SymbolKind kind_ = SymbolKind::Permutation;
};

/// Pools two distributions over the same alphabet: weights, windows seen and
/// windows retained all add. Throws std::invalid_argument on kind/m
/// mismatch.
SymbolDistribution merge(const SymbolDistribution& a,
                         const SymbolDistribution& b);

}  // namespace tiedpe
