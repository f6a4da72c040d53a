#pragma once

#include <stdexcept>
#include <string>

namespace evplace {

// Base type for every error the toolkit raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownNodeError : Error {
  explicit UnknownNodeError(const std::string& node) : Error("unknown node: " + node) {}
};

struct UnknownModeError : Error {
  explicit UnknownModeError(const std::string& mode) : Error("unknown mode: " + mode) {}
};

struct UnreachableError : Error {
  UnreachableError(const std::string& from, const std::string& to)
      : Error("no path from " + from + " to " + to) {}
};

// Inputs that leave a formula undefined (e.g. inequality of an all-zero population).
struct DegenerateInputError : Error {
  using Error::Error;
};

struct InconsistentSolutionError : Error {
  using Error::Error;
};

struct InfeasibleError : Error {
  using Error::Error;
};

struct GreedyStuckError : Error {
  using Error::Error;
};

struct OracleSizeError : Error {
  using Error::Error;
};

struct SubsetLimitError : Error {
  using Error::Error;
};

struct InsufficientDataError : Error {
  using Error::Error;
};

struct EmptyGroupError : Error {
  using Error::Error;
};

struct NoReachableStationError : Error {
  using Error::Error;
};

struct CapacityExhaustedError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace evplace
