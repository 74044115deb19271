#include "tiedpe/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tiedpe {

SymbolDistribution::SymbolDistribution(
    SymbolKind kind, int m, std::vector<std::pair<Symbol, double>> counts,
    std::size_t windows_seen, std::size_t windows_retained)
    : counts_(std::move(counts)),
      windows_seen_(windows_seen),
      windows_retained_(windows_retained),
      m_(static_cast<std::uint8_t>(m)),
      kind_(kind) {
  if (m < 2 || m > kMaxEmbedding)
    throw std::invalid_argument("distribution embedding out of range");
  if (windows_retained_ > windows_seen_)
    throw std::invalid_argument(
        "distribution retained more windows than it saw");
  for (const auto& [sym, c] : counts_) {
    if (sym.kind() != kind_ || sym.size() != m)
      throw std::invalid_argument(
          "distribution symbol does not match its alphabet");
    if (!std::isfinite(c) || c <= 0.0)
      throw std::invalid_argument(
          "distribution counts must be finite and positive");
  }
  std::sort(counts_.begin(), counts_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  // merge duplicates in place
  std::size_t w = 0;
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (w > 0 && counts_[w - 1].first == counts_[i].first)
      counts_[w - 1].second += counts_[i].second;
    else
      counts_[w++] = counts_[i];
  }
  counts_.erase(counts_.begin() + static_cast<std::ptrdiff_t>(w),
                counts_.end());
  total_ = 0.0;
  for (const auto& [sym, c] : counts_) total_ += c;
}

double SymbolDistribution::count_of(const Symbol& s) const noexcept {
  auto it = std::lower_bound(
      counts_.begin(), counts_.end(), s,
      [](const auto& pair, const Symbol& key) { return pair.first < key; });
  if (it != counts_.end() && it->first == s) return it->second;
  return 0.0;
}

double SymbolDistribution::probability(const Symbol& s) const noexcept {
  if (total_ <= 0.0) return 0.0;
  return count_of(s) / total_;
}

SymbolDistribution merge(const SymbolDistribution& a,
                         const SymbolDistribution& b) {
  if (a.kind() != b.kind() || a.embedding() != b.embedding())
    throw std::invalid_argument("cannot merge distributions over different "
                                "alphabets");
  std::vector<std::pair<Symbol, double>> counts = a.counts();
  counts.insert(counts.end(), b.counts().begin(), b.counts().end());
  return SymbolDistribution(a.kind(), a.embedding(), std::move(counts),
                            a.windows_seen() + b.windows_seen(),
                            a.windows_retained() + b.windows_retained());
}

}  // namespace tiedpe
