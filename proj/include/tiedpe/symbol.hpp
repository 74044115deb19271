#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tiedpe {

/// Which alphabet a symbol belongs to.
///
/// - Permutation: the classical ordinal patterns (m! symbols); produced by
///   the rank and chronological mappings and by every strategy that resolves
///   ties back to a total order.
/// - ChronologicalExtended: tied slots share the smallest chronological
///   index of their tie group.
/// - RankExtended: tied slots share the smallest rank of their tie group.
enum class SymbolKind : std::uint8_t {
  Permutation = 0,
  ChronologicalExtended = 1,
  RankExtended = 2,
};

std::string_view symbol_kind_name(SymbolKind kind);

/// Largest supported embedding dimension. Symbols pack one 4-bit slot per
/// entry into a 64-bit word, so 16 is a hard limit.
inline constexpr int kMaxEmbedding = 16;

class Symbol;

namespace detail {
Symbol symbol_from_packed_unchecked(SymbolKind kind, int m,
                                    std::uint64_t packed) noexcept;
}  // namespace detail

/// An ordinal symbol: m entries, each in 1..m, packed into a single 64-bit
/// word (4 bits per entry, first entry in the most significant used nibble,
/// so numeric order of `packed()` equals lexicographic order of the entry
/// sequence for a fixed m). Construction validates the entries against the
/// declared kind.
class Symbol {
 public:
  Symbol(SymbolKind kind, std::span<const std::uint8_t> entries);
  static Symbol from_packed(SymbolKind kind, int m, std::uint64_t packed);

  SymbolKind kind() const noexcept { return kind_; }
  int size() const noexcept { return m_; }
  std::uint64_t packed() const noexcept { return packed_; }

  /// Entry at slot i (0-based slot, 1-based value).
  std::uint8_t operator[](int i) const noexcept {
    return static_cast<std::uint8_t>(
        ((packed_ >> (4 * (m_ - 1 - i))) & 0xF) + 1);
  }

  std::vector<std::uint8_t> entries() const;

  /// "132" for m <= 9, "(1,3,12,...)" otherwise.
  std::string to_string() const;

  friend bool operator==(const Symbol& a, const Symbol& b) noexcept {
    return a.kind_ == b.kind_ && a.m_ == b.m_ && a.packed_ == b.packed_;
  }
  friend std::strong_ordering operator<=>(const Symbol& a,
                                          const Symbol& b) noexcept {
    if (auto c = a.m_ <=> b.m_; c != 0) return c;
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    return a.packed_ <=> b.packed_;
  }

 private:
  friend Symbol detail::symbol_from_packed_unchecked(SymbolKind, int,
                                                     std::uint64_t) noexcept;
  Symbol(SymbolKind kind, int m, std::uint64_t packed) noexcept
      : packed_(packed), m_(static_cast<std::uint8_t>(m)), kind_(kind) {}

  std::uint64_t packed_;
  std::uint8_t m_;
  SymbolKind kind_;
};

/// Packs entry values (1-based) into the canonical 64-bit representation.
/// Callers must guarantee 2 <= n <= kMaxEmbedding and entries in 1..n.
std::uint64_t pack_entries(std::span<const std::uint8_t> entries) noexcept;

}  // namespace tiedpe
