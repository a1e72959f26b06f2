#pragma once

#include <stdexcept>
#include <string>

namespace bnaco {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed network / graph / sweep documents.
struct ParseError : Error {
    using Error::Error;
};

// Bad cells, unknown labels, ragged rows in datasets.
struct DataError : Error {
    using Error::Error;
};

// Invalid parameter combinations (AcoParams, ScoringConfig, CLI flags).
struct ConfigError : Error {
    using Error::Error;
};

// A family query exceeded the configured parent limit.
struct LimitError : Error {
    using Error::Error;
};

// The PDAG does not represent an equivalence class.
struct NoConsistentExtension : Error {
    using Error::Error;
};

}  // namespace bnaco
