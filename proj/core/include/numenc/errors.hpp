#pragma once

#include <stdexcept>
#include <string>

namespace numenc {

/// Base class of all recoverable toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or usage (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

/// Invalid or unusable data (CLI exit code 1).
struct DataError : Error {
    using Error::Error;
};

// spline-basis
struct NonIncreasingKnots : ConfigError { using ConfigError::ConfigError; };
struct KnotOutOfDomain : ConfigError { using ConfigError::ConfigError; };
struct DegenerateDomain : DataError { using DataError::DataError; };

// trees / placement / ple
struct EmptyInput : DataError { using DataError::DataError; };
struct SingleClass : DataError { using DataError::DataError; };

// learnable-knots
struct InvalidDelta : ConfigError { using ConfigError::ConfigError; };

// backbone
struct ShapeMismatch : Error { using Error::Error; };
struct StaleCache : Error { using Error::Error; };
struct EmptyTrainingSet : DataError { using DataError::DataError; };

// pipeline
struct FileNotFound : DataError { using DataError::DataError; };
struct TargetMissing : ConfigError { using ConfigError::ConfigError; };
struct AllRowsDropped : DataError { using DataError::DataError; };
struct TooFewRows : DataError { using DataError::DataError; };

// metrics-stats
struct ZeroRange : DataError { using DataError::DataError; };
struct UnsupportedK : ConfigError { using ConfigError::ConfigError; };
struct SingularSystem : DataError { using DataError::DataError; };

} // namespace numenc
