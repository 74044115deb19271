#pragma once

// Small conveniences shared by the test binaries.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tiedpe/ordinal.hpp"
#include "tiedpe/symbol.hpp"

namespace testutil {

/// View a whole vector as one window (delay 1). The vector must outlive it.
inline tiedpe::Window win(const std::vector<double>& values) {
  return tiedpe::Window{values.data(), static_cast<std::int32_t>(values.size()),
                        1, 0};
}

/// Symbol from digit string, e.g. sym(kind, "231").
inline tiedpe::Symbol sym(tiedpe::SymbolKind kind, std::string_view digits) {
  std::vector<std::uint8_t> entries;
  for (char c : digits) entries.push_back(static_cast<std::uint8_t>(c - '0'));
  return tiedpe::Symbol(kind, entries);
}

inline tiedpe::Symbol perm(std::string_view digits) {
  return sym(tiedpe::SymbolKind::Permutation, digits);
}

/// The 21-sample worked example used throughout: 19 windows at m=3, of
/// which 7 contain ties.
inline const std::vector<double> kWorkedSeries = {2, 5, 1, 2, 7, 1, 1, 3, 1, 2, 4,
                                                  5, 1, 3, 2, 4, 4, 2, 2, 1, 0};

}  // namespace testutil
