#include "tiedpe/ordinal.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace tiedpe {

std::vector<Window> embed(std::span<const double> series, int m, int delay) {
  if (m < 2 || m > kMaxEmbedding)
    throw std::invalid_argument("embedding dimension must be in [2, 16], got " +
                                std::to_string(m));
  if (delay < 1)
    throw std::invalid_argument("embedding delay must be >= 1");
  const std::size_t span_len =
      static_cast<std::size_t>(m - 1) * static_cast<std::size_t>(delay) + 1;
  if (series.size() < span_len)
    throw std::invalid_argument(
        "series too short: " + std::to_string(series.size()) +
        " samples cannot hold a window of dimension " + std::to_string(m) +
        " at delay " + std::to_string(delay));
  const std::size_t count = series.size() - span_len + 1;
  std::vector<Window> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s)
    out.push_back(Window{series.data() + s, m, delay, s});
  return out;
}

void min_ranks(const Window& w, std::uint8_t* out) noexcept {
  const int m = w.m;
  for (int i = 0; i < m; ++i) {
    const double xi = w[i];
    int below = 0;
    for (int j = 0; j < m; ++j) below += (w[j] < xi);
    out[i] = static_cast<std::uint8_t>(below + 1);
  }
}

std::vector<std::uint8_t> min_ranks(const Window& w) {
  std::vector<std::uint8_t> r(w.m);
  min_ranks(w, r.data());
  return r;
}

bool has_ties(const Window& w) noexcept {
  const int m = w.m;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (w[i] == w[j]) return true;
  return false;
}

namespace {
[[noreturn]] void throw_ties() {
  throw std::invalid_argument(
      "ties present: the permutation mappings are undefined on tied "
      "windows; route them through a tie strategy");
}
}  // namespace

Symbol map_rank(const Window& w) {
  if (has_ties(w)) throw_ties();
  std::array<std::uint8_t, kMaxEmbedding> r;
  min_ranks(w, r.data());
  return detail::symbol_from_packed_unchecked(
      SymbolKind::Permutation, w.m,
      pack_entries(std::span<const std::uint8_t>(r.data(), w.m)));
}

Symbol map_chronological(const Window& w) {
  if (has_ties(w)) throw_ties();
  std::array<std::uint8_t, kMaxEmbedding> r, inv;
  min_ranks(w, r.data());
  for (int i = 0; i < w.m; ++i)
    inv[r[i] - 1] = static_cast<std::uint8_t>(i + 1);
  return detail::symbol_from_packed_unchecked(
      SymbolKind::Permutation, w.m,
      pack_entries(std::span<const std::uint8_t>(inv.data(), w.m)));
}

}  // namespace tiedpe
