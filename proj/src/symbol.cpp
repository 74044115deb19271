#include "tiedpe/symbol.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace tiedpe {

namespace {

void check_size(int m) {
  if (m < 2 || m > kMaxEmbedding)
    throw std::invalid_argument("symbol size must be in [2, 16], got " +
                                std::to_string(m));
}

// Tied slots must carry their group's lowest rank: the sorted distinct
// entry values must tile 1..m, each value r followed by r + multiplicity(r).
void validate_rank_extended(std::span<const std::uint8_t> e) {
  const int m = static_cast<int>(e.size());
  std::array<int, kMaxEmbedding + 1> mult{};
  for (auto v : e) ++mult[v];
  int expected = 1;
  for (int r = 1; r <= m; ++r) {
    if (mult[r] == 0) continue;
    if (r != expected)
      throw std::invalid_argument(
          "rank-extended entries are not minimum ranks");
    expected = r + mult[r];
  }
  if (expected != m + 1)
    throw std::invalid_argument("rank-extended entries are not minimum ranks");
}

// Entries sit in sorted-value order and tied slots carry their group's
// smallest chronological index, so the code is a sequence of maximal runs
// with distinct run values; each run of length k must be completable with
// k-1 unused indexes larger than its value (checked greedily, tightest run
// first).
void validate_chronological_extended(std::span<const std::uint8_t> e) {
  const int m = static_cast<int>(e.size());
  struct Run {
    int value, extras;
  };
  std::array<Run, kMaxEmbedding> runs;
  int n_runs = 0;
  std::array<bool, kMaxEmbedding + 1> used{};
  for (int i = 0; i < m;) {
    int j = i;
    while (j < m && e[j] == e[i]) ++j;
    const int v = e[i];
    if (used[v])
      throw std::invalid_argument(
          "chronological-extended runs repeat an index");
    used[v] = true;
    runs[n_runs++] = {v, j - i - 1};
    i = j;
  }
  std::sort(runs.begin(), runs.begin() + n_runs,
            [](const Run& a, const Run& b) { return a.value > b.value; });
  std::array<int, kMaxEmbedding> pool;
  int n_pool = 0;
  for (int v = m; v >= 1; --v)
    if (!used[v]) pool[n_pool++] = v;  // descending
  int next = 0;
  for (int r = 0; r < n_runs; ++r) {
    for (int k = 0; k < runs[r].extras; ++k) {
      if (next >= n_pool || pool[next] <= runs[r].value)
        throw std::invalid_argument(
            "chronological-extended entries are not group-minimal indexes");
      ++next;
    }
  }
}

void validate_entries(SymbolKind kind, std::span<const std::uint8_t> e) {
  const int m = static_cast<int>(e.size());
  check_size(m);
  for (auto v : e)
    if (v < 1 || v > m)
      throw std::invalid_argument("symbol entries must lie in 1..m");
  switch (kind) {
    case SymbolKind::Permutation: {
      std::array<bool, kMaxEmbedding + 1> seen{};
      for (auto v : e) {
        if (seen[v])
          throw std::invalid_argument(
              "permutation symbol repeats an entry");
        seen[v] = true;
      }
      break;
    }
    case SymbolKind::RankExtended:
      validate_rank_extended(e);
      break;
    case SymbolKind::ChronologicalExtended:
      validate_chronological_extended(e);
      break;
  }
}

}  // namespace

std::string_view symbol_kind_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::Permutation:
      return "permutation";
    case SymbolKind::ChronologicalExtended:
      return "chrono-ext";
    case SymbolKind::RankExtended:
      return "rank-ext";
  }
  return "?";
}

std::uint64_t pack_entries(std::span<const std::uint8_t> entries) noexcept {
  std::uint64_t p = 0;
  for (auto v : entries) p = (p << 4) | static_cast<std::uint64_t>(v - 1);
  return p;
}

Symbol::Symbol(SymbolKind kind, std::span<const std::uint8_t> entries)
    : packed_(0), m_(0), kind_(kind) {
  validate_entries(kind, entries);
  m_ = static_cast<std::uint8_t>(entries.size());
  packed_ = pack_entries(entries);
}

Symbol Symbol::from_packed(SymbolKind kind, int m, std::uint64_t packed) {
  check_size(m);
  if (m < kMaxEmbedding && (packed >> (4 * m)) != 0)
    throw std::invalid_argument("packed symbol has stray high bits");
  std::array<std::uint8_t, kMaxEmbedding> e;
  for (int i = 0; i < m; ++i)
    e[i] = static_cast<std::uint8_t>(((packed >> (4 * (m - 1 - i))) & 0xF) + 1);
  return Symbol(kind, std::span<const std::uint8_t>(e.data(), m));
}

std::vector<std::uint8_t> Symbol::entries() const {
  std::vector<std::uint8_t> e(m_);
  for (int i = 0; i < m_; ++i) e[i] = (*this)[i];
  return e;
}

std::string Symbol::to_string() const {
  std::string s;
  if (m_ <= 9) {
    s.reserve(m_);
    for (int i = 0; i < m_; ++i)
      s.push_back(static_cast<char>('0' + (*this)[i]));
  } else {
    s.push_back('(');
    for (int i = 0; i < m_; ++i) {
      if (i) s.push_back(',');
      s += std::to_string((*this)[i]);
    }
    s.push_back(')');
  }
  return s;
}

namespace detail {
Symbol symbol_from_packed_unchecked(SymbolKind kind, int m,
                                    std::uint64_t packed) noexcept {
  return Symbol(kind, m, packed);
}
}  // namespace detail

}  // namespace tiedpe
