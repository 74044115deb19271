#include "tiedpe/format.hpp"

#include <cmath>
#include <cstdio>

namespace tiedpe {

std::string format_g12(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  const bool needs_quoting =
      s.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quoting) return std::string(s);
  std::string out;
  out.reserve(s.size() + 2);
  out.push_back('"');
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace tiedpe
