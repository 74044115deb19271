#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tiedpe/config.hpp"
#include "tiedpe/ordinal.hpp"

namespace tiedpe {

/// A named discrete-time map with parameters, initial state, transient
/// burn-in, and the state coordinate to observe.
///
/// Built-in families (1-D unless noted): logistic, skew_tent, sine, cubic,
/// ricker, gauss (the mouse map), gingerbreadman (2-D), henon (2-D),
/// lozi (2-D), tinkerbell (2-D), burgers (2-D), delayed_logistic (2-D),
/// poly1d (arbitrary polynomial, `coeffs` low-order first), and
/// piecewise_linear (`xs`/`ys` breakpoint lists, end segments extrapolate).
struct MapSpec {
  std::string name;                    ///< catalog label (CSV `map` column)
  std::string family;                  ///< one of the families above
  std::map<std::string, double> params;
  std::vector<double> initial_state;   ///< x0 [, y0]
  std::vector<double> coeffs;          ///< poly1d only
  std::vector<double> xs, ys;          ///< piecewise_linear only
  long long burn_in = 1000;
  int observable = 0;                  ///< index into the state vector
};

/// The ten standard chaotic maps used by the default sweep, with
/// literature-standard parameters and fixed initial conditions. Every
/// catalog orbit is bounded and essentially tie-free before truncation
/// (repeated window ratio < 1e-3 at m <= 6).
std::vector<MapSpec> default_catalog();

/// Builds a MapSpec from a `[map <name>]` config section. Unknown families
/// or missing required keys raise IoError naming the section.
MapSpec map_spec_from_section(const ConfigSection& section);

/// Iterates the map from its initial state, discards burn_in samples, and
/// returns exactly n observations. Deterministic. Throws SimulationError
/// naming the iteration index if the orbit leaves [-1e12, 1e12] or becomes
/// non-finite; std::invalid_argument for a malformed spec or n < 1.
TimeSeries generate(const MapSpec& spec, std::size_t n);

/// trunc(v * 10^d) / 10^d elementwise (toward zero). d >= 0.
TimeSeries truncate_decimals(std::span<const double> series, int decimals);

/// Fraction of windows containing at least one exact tie.
double repeated_ratio(std::span<const Window> windows);

}  // namespace tiedpe
