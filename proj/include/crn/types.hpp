#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace crn {

/// Stable integer handle for an interned species. Ids are dense, start at 0,
/// and are never reused within one species table.
using SpeciesId = int32_t;

inline constexpr SpeciesId kNoSpecies = -1;

/// Raised when user-supplied configuration or parameters are invalid.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an input artifact (chemistry file, event log, ...) cannot be
/// parsed or carries an unsupported schema version.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on internal consistency violations (propensity/count mismatches).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace crn
