#pragma once

#include <stdexcept>
#include <string>

namespace biasminer {

// Base class for all library errors. Callers that don't care about the
// distinction can catch this; the CLI maps subclasses onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration / argument problems (bad tau, bad k, bad format, ...).
struct ConfigError : Error {
    using Error::Error;
};

// File-system problems (unreadable, unwritable).
struct IoError : Error {
    using Error::Error;
};

// Malformed data encountered in an input (bad file, bad record).
struct DataError : Error {
    using Error::Error;
};

// vocab_db
struct FrozenVocabulary : DataError {
    using DataError::DataError;
};
struct InvalidItem : DataError {
    using DataError::DataError;
};
struct InvalidRecord : DataError {
    using DataError::DataError;
};
struct MalformedDatabase : DataError {
    using DataError::DataError;
};

// attention_crop
struct InvalidDimension : ConfigError {
    using ConfigError::ConfigError;
};
struct ZeroMass : DataError {
    using DataError::DataError;
};

// codebook
struct InsufficientData : DataError {
    using DataError::DataError;
};
struct DimensionMismatch : DataError {
    using DataError::DataError;
};

// miner
struct UnknownItem : DataError {
    using DataError::DataError;
};
struct InvalidThreshold : ConfigError {
    using ConfigError::ConfigError;
};
struct OracleTooLarge : ConfigError {
    using ConfigError::ConfigError;
};

// rules
struct IncompleteLattice : DataError {
    using DataError::DataError;
};

// synth
struct InvalidSpec : ConfigError {
    using ConfigError::ConfigError;
};

// reports
struct InvalidFormat : ConfigError {
    using ConfigError::ConfigError;
};
struct MalformedReport : DataError {
    using DataError::DataError;
};

}  // namespace biasminer
