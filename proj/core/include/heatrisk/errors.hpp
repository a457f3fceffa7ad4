#pragma once

#include <stdexcept>
#include <string>

namespace heatrisk {

/// Base class for all heatrisk errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid run configuration: bad paths, shares outside [0,1], empty country
/// list and the like. CLI exit code 2.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed or out-of-contract input data: parse failures, grid gaps beyond
/// policy, non-positive drivers, capacity factors outside [0,1]. CLI exit
/// code 3.
class DataError : public Error {
public:
  using Error::Error;
};

/// Numerical failure: rank-deficient design matrix, too few samples for a
/// tail statistic, degenerate KDE input. CLI exit code 4.
class NumericError : public Error {
public:
  using Error::Error;
};

/// Caller broke an API contract (schema mismatch, misaligned series). These
/// indicate a programming error rather than bad data.
class ContractError : public Error {
public:
  using Error::Error;
};

}  // namespace heatrisk
