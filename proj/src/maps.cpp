#include "tiedpe/maps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "tiedpe/errors.hpp"

namespace tiedpe {

namespace {

enum class Family {
  Logistic,
  SkewTent,
  Sine,
  Cubic,
  Ricker,
  Gauss,
  Henon,
  Lozi,
  Tinkerbell,
  Burgers,
  DelayedLogistic,
  Gingerbreadman,
  Poly1d,
  PiecewiseLinear,
};

struct FamilyInfo {
  const char* name;
  Family family;
  int dims;
  // parameter names with defaults (literature-standard chaotic settings)
  std::initializer_list<std::pair<const char*, double>> params;
};

constexpr double kPi = std::numbers::pi;

const FamilyInfo kFamilies[] = {
    {"logistic", Family::Logistic, 1, {{"r", 4.0}}},
    {"skew_tent", Family::SkewTent, 1, {{"a", 0.1847}}},
    {"sine", Family::Sine, 1, {{"A", 1.0}}},
    {"cubic", Family::Cubic, 1, {{"A", 3.0}}},
    {"ricker", Family::Ricker, 1, {{"r", 3.0}}},
    {"gauss", Family::Gauss, 1, {{"alpha", 4.9}, {"beta", -0.58}}},
    {"henon", Family::Henon, 2, {{"a", 1.4}, {"b", 0.3}}},
    {"lozi", Family::Lozi, 2, {{"a", 1.7}, {"b", 0.5}}},
    {"tinkerbell",
     Family::Tinkerbell,
     2,
     {{"a", 0.9}, {"b", -0.6013}, {"c", 2.0}, {"d", 0.5}}},
    {"burgers", Family::Burgers, 2, {{"a", 0.75}, {"b", 1.75}}},
    {"delayed_logistic", Family::DelayedLogistic, 2, {{"a", 2.27}}},
    {"gingerbreadman", Family::Gingerbreadman, 2, {}},
    {"poly1d", Family::Poly1d, 1, {}},
    {"piecewise_linear", Family::PiecewiseLinear, 1, {}},
};

const FamilyInfo& family_info(const std::string& name) {
  for (const auto& f : kFamilies)
    if (name == f.name) return f;
  throw std::invalid_argument("unknown map family '" + name + "'");
}

double param(const MapSpec& spec, const char* key, double def) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? def : it->second;
}

void validate_spec(const MapSpec& spec, const FamilyInfo& info) {
  for (const auto& [key, value] : spec.params) {
    bool known = false;
    for (const auto& [pname, pdef] : info.params)
      if (key == pname) known = true;
    if (!known)
      throw std::invalid_argument("map '" + spec.name +
                                  "': unknown parameter '" + key +
                                  "' for family '" + spec.family + "'");
  }
  if (spec.initial_state.empty())
    throw std::invalid_argument("map '" + spec.name +
                                "': missing initial state (x0)");
  if (static_cast<int>(spec.initial_state.size()) < info.dims)
    throw std::invalid_argument("map '" + spec.name + "': family '" +
                                spec.family + "' needs " +
                                std::to_string(info.dims) +
                                " initial coordinates");
  if (spec.burn_in < 0)
    throw std::invalid_argument("map '" + spec.name + "': burn_in < 0");
  if (spec.observable < 0 || spec.observable >= info.dims)
    throw std::invalid_argument("map '" + spec.name +
                                "': observable index out of range");
  if (info.family == Family::Poly1d && spec.coeffs.empty())
    throw std::invalid_argument("map '" + spec.name +
                                "': poly1d needs a coeffs list");
  if (info.family == Family::PiecewiseLinear) {
    if (spec.xs.size() < 2 || spec.xs.size() != spec.ys.size())
      throw std::invalid_argument(
          "map '" + spec.name +
          "': piecewise_linear needs xs and ys lists of equal length >= 2");
    for (std::size_t i = 1; i < spec.xs.size(); ++i)
      if (!(spec.xs[i - 1] < spec.xs[i]))
        throw std::invalid_argument("map '" + spec.name +
                                    "': xs must be strictly increasing");
  }
}

double piecewise_eval(const std::vector<double>& xs,
                      const std::vector<double>& ys, double x) {
  // segment lookup; end segments extrapolate linearly
  std::size_t hi = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
  if (hi == 0) hi = 1;
  if (hi == xs.size()) hi = xs.size() - 1;
  const std::size_t lo = hi - 1;
  const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + t * (ys[hi] - ys[lo]);
}

}  // namespace

std::vector<MapSpec> default_catalog() {
  auto mk = [](const char* family, std::vector<double> state,
               std::map<std::string, double> params = {}) {
    MapSpec s;
    s.name = family;
    s.family = family;
    s.params = std::move(params);
    s.initial_state = std::move(state);
    s.burn_in = 1000;
    s.observable = 0;
    return s;
  };
  std::vector<MapSpec> catalog;
  catalog.push_back(mk("logistic", {0.1}, {{"r", 4.0}}));
  catalog.push_back(mk("skew_tent", {0.1}, {{"a", 0.1847}}));
  catalog.push_back(mk("sine", {0.1}, {{"A", 1.0}}));
  catalog.push_back(mk("cubic", {0.1}, {{"A", 3.0}}));
  catalog.push_back(mk("ricker", {0.5}, {{"r", 3.0}}));
  catalog.push_back(mk("henon", {0.1, 0.1}, {{"a", 1.4}, {"b", 0.3}}));
  catalog.push_back(mk("lozi", {0.1, 0.1}, {{"a", 1.7}, {"b", 0.5}}));
  catalog.push_back(mk(
      "tinkerbell", {-0.72, -0.64},
      {{"a", 0.9}, {"b", -0.6013}, {"c", 2.0}, {"d", 0.5}}));
  catalog.push_back(mk("burgers", {-0.1, 0.1}, {{"a", 0.75}, {"b", 1.75}}));
  catalog.push_back(mk("delayed_logistic", {0.001, 0.001}, {{"a", 2.27}}));
  return catalog;
}

MapSpec map_spec_from_section(const ConfigSection& section) {
  MapSpec spec;
  // section name "map <label>"; the label defaults the family
  std::string label = section.name;
  if (label.rfind("map ", 0) == 0) label = label.substr(4);
  spec.name = label;
  spec.family = section.get_string("family", label);

  try {
    family_info(spec.family);
  } catch (const std::invalid_argument& e) {
    throw IoError("config section [" + section.name + "]: " + e.what());
  }

  static const std::set<std::string> reserved = {
      "family", "x0", "y0", "burn_in", "observable", "coeffs", "xs", "ys"};
  for (const auto& [key, value] : section.entries) {
    if (reserved.count(key)) continue;
    spec.params[key] = section.get_double(key);
  }
  spec.initial_state.push_back(section.get_double("x0"));
  if (section.has("y0")) spec.initial_state.push_back(section.get_double("y0"));
  spec.burn_in = section.get_int("burn_in", 1000);
  if (section.has("coeffs")) spec.coeffs = section.get_doubles("coeffs");
  if (section.has("xs")) spec.xs = section.get_doubles("xs");
  if (section.has("ys")) spec.ys = section.get_doubles("ys");
  const std::string obs = section.get_string("observable", "x");
  if (obs == "x" || obs == "0")
    spec.observable = 0;
  else if (obs == "y" || obs == "1")
    spec.observable = 1;
  else
    throw IoError("config section [" + section.name +
                  "]: observable must be x or y");
  return spec;
}

TimeSeries generate(const MapSpec& spec, std::size_t n) {
  if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
  const FamilyInfo& info = family_info(spec.family);
  validate_spec(spec, info);

  double x = spec.initial_state[0];
  double y = info.dims > 1 ? spec.initial_state[1] : 0.0;

  // bind parameters once
  const double p0 = info.params.size() > 0 ? param(spec, info.params.begin()[0].first,
                                                   info.params.begin()[0].second)
                                           : 0.0;
  const double p1 = info.params.size() > 1 ? param(spec, info.params.begin()[1].first,
                                                   info.params.begin()[1].second)
                                           : 0.0;
  const double p2 = info.params.size() > 2 ? param(spec, info.params.begin()[2].first,
                                                   info.params.begin()[2].second)
                                           : 0.0;
  const double p3 = info.params.size() > 3 ? param(spec, info.params.begin()[3].first,
                                                   info.params.begin()[3].second)
                                           : 0.0;

  TimeSeries out;
  out.reserve(n);
  const std::size_t total =
      static_cast<std::size_t>(spec.burn_in) + n;
  for (std::size_t i = 0; i < total; ++i) {
    if (i >= static_cast<std::size_t>(spec.burn_in))
      out.push_back(info.dims > 1 && spec.observable == 1 ? y : x);
    if (out.size() == n) break;
    double nx = x, ny = y;
    switch (info.family) {
      case Family::Logistic:
        nx = p0 * x * (1.0 - x);
        break;
      case Family::SkewTent:
        nx = x < p0 ? x / p0 : (1.0 - x) / (1.0 - p0);
        break;
      case Family::Sine:
        nx = p0 * std::sin(kPi * x);
        break;
      case Family::Cubic:
        nx = p0 * x * (1.0 - x * x);
        break;
      case Family::Ricker:
        nx = x * std::exp(p0 * (1.0 - x));
        break;
      case Family::Gauss:
        nx = std::exp(-p0 * x * x) + p1;
        break;
      case Family::Henon:
        nx = 1.0 - p0 * x * x + y;
        ny = p1 * x;
        break;
      case Family::Lozi:
        nx = 1.0 - p0 * std::fabs(x) + y;
        ny = p1 * x;
        break;
      case Family::Tinkerbell:
        nx = x * x - y * y + p0 * x + p1 * y;
        ny = 2.0 * x * y + p2 * x + p3 * y;
        break;
      case Family::Burgers:
        nx = p0 * x - y * y;
        ny = p1 * y + x * y;
        break;
      case Family::DelayedLogistic:
        nx = p0 * x * (1.0 - y);
        ny = x;
        break;
      case Family::Gingerbreadman:
        nx = 1.0 - y + std::fabs(x);
        ny = x;
        break;
      case Family::Poly1d: {
        double acc = 0.0;
        for (std::size_t k = spec.coeffs.size(); k-- > 0;)
          acc = acc * x + spec.coeffs[k];
        nx = acc;
        break;
      }
      case Family::PiecewiseLinear:
        nx = piecewise_eval(spec.xs, spec.ys, x);
        break;
    }
    x = nx;
    y = ny;
    if (!std::isfinite(x) || !std::isfinite(y) || std::fabs(x) > 1e12 ||
        std::fabs(y) > 1e12)
      throw SimulationError("map '" + spec.name +
                            "' diverged at iteration " + std::to_string(i + 1));
  }
  return out;
}

TimeSeries truncate_decimals(std::span<const double> series, int decimals) {
  if (decimals < 0)
    throw std::invalid_argument("truncate_decimals: decimals must be >= 0");
  const double factor = std::pow(10.0, decimals);
  TimeSeries out;
  out.reserve(series.size());
  for (double v : series) out.push_back(std::trunc(v * factor) / factor);
  return out;
}

double repeated_ratio(std::span<const Window> windows) {
  if (windows.empty())
    throw std::invalid_argument("repeated_ratio: no windows");
  std::size_t tied = 0;
  for (const auto& w : windows) tied += has_ties(w);
  return static_cast<double>(tied) / static_cast<double>(windows.size());
}

}  // namespace tiedpe
