#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tiedpe {

/// One `[section]` of a config file: its name and the key = value entries
/// in file order. Later duplicates of a key override earlier ones.
struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  const std::string* find(std::string_view key) const;
  bool has(std::string_view key) const { return find(key) != nullptr; }

  // Typed accessors; throw IoError naming the section and key when the
  // value is absent (no default) or unparseable.
  std::string get_string(std::string_view key) const;
  std::string get_string(std::string_view key, std::string_view def) const;
  double get_double(std::string_view key) const;
  double get_double(std::string_view key, double def) const;
  long long get_int(std::string_view key) const;
  long long get_int(std::string_view key, long long def) const;
  std::vector<double> get_doubles(std::string_view key) const;
  std::vector<std::string> get_strings(std::string_view key) const;
};

/// Parsed config file: sections in file order. The same format serves the
/// map catalog and the sweep grid:
///
///   # comment
///   [sweep]
///   lengths = 10000 30000
///   dims = 3 4 5 6
///
///   [map logistic]
///   family = logistic
///   r = 4.0
///   x0 = 0.1
struct Config {
  std::vector<ConfigSection> sections;

  const ConfigSection* find(std::string_view name) const;
  std::vector<const ConfigSection*> with_prefix(std::string_view prefix) const;
};

/// Parses the key = value / [section] format. Lines are trimmed; '#' starts
/// a comment; keys before the first section header go into an unnamed
/// section "". Throws IoError with the offending line number on malformed
/// input. `origin` labels error messages (usually the file name).
Config parse_config(std::istream& in, std::string_view origin = "<stream>");

/// Reads and parses a config file; IoError if it cannot be opened.
Config load_config(const std::filesystem::path& path);

}  // namespace tiedpe
