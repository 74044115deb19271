#pragma once

#include <string>
#include <string_view>

namespace tiedpe {

/// Shortest representation at 12 significant digits (printf %.12g); NaN
/// prints as "nan". Used by every CSV emitter so outputs are byte-stable.
std::string format_g12(double v);

/// RFC-4180: quotes the field (doubling inner quotes) only when it contains
/// a comma, quote, or newline.
std::string csv_field(std::string_view s);

}  // namespace tiedpe
