#pragma once

#include <stdexcept>
#include <string>

namespace egan {

/** Malformed graph or incompatible shapes. */
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** NaN/Inf encountered during evaluation or optimization. */
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** API misuse (empty inputs, wrong call order). */
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** Unreadable or malformed data files. */
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/** Invalid run configuration. */
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace egan
