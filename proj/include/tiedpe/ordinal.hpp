#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tiedpe/symbol.hpp"

namespace tiedpe {

using TimeSeries = std::vector<double>;

/// A non-owning view of one embedded window: m values taken from a series
/// at stride `delay`. Windows are cheap to copy; the underlying series must
/// outlive them.
struct Window {
  const double* base = nullptr;  ///< first element of the window
  std::int32_t m = 0;            ///< embedding dimension
  std::int32_t delay = 1;        ///< stride between consecutive slots
  std::size_t start = 0;         ///< index of base in the source series

  double operator[](int i) const noexcept { return base[i * delay]; }
};

/// Slices `series` into its T - (m-1)*delay overlapping windows.
/// Throws std::invalid_argument if m is outside [2, kMaxEmbedding],
/// delay < 1, or the series is too short to hold a single window.
std::vector<Window> embed(std::span<const double> series, int m,
                          int delay = 1);

/// Ranks with minimum-rank tie handling: out[i] = 1 + |{j : x_j < x_i}|.
/// Tie-free windows yield a permutation of 1..m; tied windows repeat the
/// smallest rank of each tie group. `out` must hold m bytes.
void min_ranks(const Window& w, std::uint8_t* out) noexcept;
std::vector<std::uint8_t> min_ranks(const Window& w);

/// True if any two slots hold exactly equal values.
bool has_ties(const Window& w) noexcept;

/// Rank mapping for tie-free windows: slot i carries the rank of x_i.
/// Throws std::invalid_argument if the window contains ties.
Symbol map_rank(const Window& w);

/// Chronological mapping for tie-free windows: slot r carries the time
/// index (1-based) of the r-th smallest value; the inverse permutation of
/// the rank mapping. Throws std::invalid_argument if the window has ties.
Symbol map_chronological(const Window& w);

}  // namespace tiedpe
