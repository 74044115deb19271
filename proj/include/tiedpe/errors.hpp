#pragma once

#include <stdexcept>
#include <string>

namespace tiedpe {

/// Base class for all library-specific failures.
class TiedPeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file or directory could not be read, or its contents were malformed.
class IoError : public TiedPeError {
 public:
  using TiedPeError::TiedPeError;
};

/// A tie-handling strategy could not produce a usable distribution
/// (e.g. complete-case removal discarded every window, or a group
/// comparison ended up with no successful entropy values).
class StrategyError : public TiedPeError {
 public:
  using TiedPeError::TiedPeError;
};

/// A map orbit left its basin (NaN/inf or runaway magnitude) while
/// generating a series.
class SimulationError : public TiedPeError {
 public:
  using TiedPeError::TiedPeError;
};

}  // namespace tiedpe
