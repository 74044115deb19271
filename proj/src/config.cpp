#include "tiedpe/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tiedpe/errors.hpp"

namespace tiedpe {

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail_key(const ConfigSection& sec, std::string_view key,
                           std::string_view what) {
  throw IoError("config section [" + sec.name + "], key '" +
                std::string(key) + "': " + std::string(what));
}

double parse_double(const ConfigSection& sec, std::string_view key,
                    std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    fail_key(sec, key, "expected a number, got '" + std::string(text) + "'");
  return v;
}

long long parse_int(const ConfigSection& sec, std::string_view key,
                    std::string_view text) {
  long long v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last)
    fail_key(sec, key, "expected an integer, got '" + std::string(text) + "'");
  return v;
}

}  // namespace

const std::string* ConfigSection::find(std::string_view key) const {
  const std::string* hit = nullptr;
  for (const auto& [k, v] : entries)
    if (k == key) hit = &v;  // last occurrence wins
  return hit;
}

std::string ConfigSection::get_string(std::string_view key) const {
  const std::string* v = find(key);
  if (!v) fail_key(*this, key, "missing required key");
  return *v;
}

std::string ConfigSection::get_string(std::string_view key,
                                      std::string_view def) const {
  const std::string* v = find(key);
  return v ? *v : std::string(def);
}

double ConfigSection::get_double(std::string_view key) const {
  return parse_double(*this, key, get_string(key));
}

double ConfigSection::get_double(std::string_view key, double def) const {
  const std::string* v = find(key);
  return v ? parse_double(*this, key, *v) : def;
}

long long ConfigSection::get_int(std::string_view key) const {
  return parse_int(*this, key, get_string(key));
}

long long ConfigSection::get_int(std::string_view key, long long def) const {
  const std::string* v = find(key);
  return v ? parse_int(*this, key, *v) : def;
}

std::vector<double> ConfigSection::get_doubles(std::string_view key) const {
  std::vector<double> out;
  for (const std::string& tok : get_strings(key))
    out.push_back(parse_double(*this, key, tok));
  return out;
}

std::vector<std::string> ConfigSection::get_strings(
    std::string_view key) const {
  // lists may be separated by whitespace, commas, or both
  std::string value = get_string(key);
  for (char& c : value)
    if (c == ',') c = ' ';
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  if (out.empty()) fail_key(*this, key, "expected at least one value");
  return out;
}

const ConfigSection* Config::find(std::string_view name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<const ConfigSection*> Config::with_prefix(
    std::string_view prefix) const {
  std::vector<const ConfigSection*> out;
  for (const auto& s : sections)
    if (s.name.size() >= prefix.size() &&
        std::string_view(s.name).substr(0, prefix.size()) == prefix)
      out.push_back(&s);
  return out;
}

Config parse_config(std::istream& in, std::string_view origin) {
  Config cfg;
  cfg.sections.push_back(ConfigSection{"", {}});
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw IoError(std::string(origin) + ":" + std::to_string(line_no) +
                      ": unterminated section header");
      std::string_view name = trim(line.substr(1, line.size() - 2));
      if (name.empty())
        throw IoError(std::string(origin) + ":" + std::to_string(line_no) +
                      ": empty section name");
      cfg.sections.push_back(ConfigSection{std::string(name), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw IoError(std::string(origin) + ":" + std::to_string(line_no) +
                    ": expected 'key = value' or '[section]'");
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty())
      throw IoError(std::string(origin) + ":" + std::to_string(line_no) +
                    ": empty key");
    cfg.sections.back().entries.emplace_back(std::string(key),
                                             std::string(value));
  }
  // drop the unnamed preamble section if nothing was put there
  if (cfg.sections.front().entries.empty() && cfg.sections.front().name.empty())
    cfg.sections.erase(cfg.sections.begin());
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open config file: " + path.string());
  return parse_config(in, path.string());
}

}  // namespace tiedpe
