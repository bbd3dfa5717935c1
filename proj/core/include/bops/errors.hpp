#pragma once

#include <stdexcept>
#include <string>

namespace bops {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent input files (machine specs, measurements,
/// counter exports). Maps to CLI exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Tally accumulation would exceed 64-bit range. Counts must fail loudly,
/// never wrap.
class TallyOverflow : public Error {
public:
    using Error::Error;
};

/// Operation intensity requested for a measurement with no byte traffic.
class UndefinedIntensity : public Error {
public:
    using Error::Error;
};

/// Measurement-time failures: sort verification, allocation, clock errors,
/// mismatched tally adoption. Maps to CLI exit code 1.
class MeasurementError : public Error {
public:
    using Error::Error;
};

}  // namespace bops
