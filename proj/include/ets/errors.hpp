#pragma once

#include <stdexcept>
#include <string>

namespace ets {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad or missing input data: unreadable files, schema mismatches,
/// records violating domain invariants, empty analysis windows.
class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(what) {}
};

/// Too few observations for the requested operation.
class InsufficientDataError : public DataError {
public:
    explicit InsufficientDataError(const std::string& what) : DataError(what) {}
};

/// Numerical failure: rank deficiency, non-convergence, nonfinite
/// intermediates in a likelihood or recursion.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

/// Invalid configuration or call contract violation.
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what) {}
};

}  // namespace ets
