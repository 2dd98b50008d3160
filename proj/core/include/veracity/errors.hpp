#pragma once

#include <stdexcept>
#include <string>

namespace veracity {

/// Raised when a configuration value violates a component precondition
/// (stride of zero, threshold outside [0, 1], overlap >= chunk length, ...).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A failed call to an external service. `attempts` is the number of
/// attempts made before giving up (1 for non-retried failures).
class BackendError : public std::runtime_error {
public:
    explicit BackendError(const std::string& what, int attempts = 1)
        : std::runtime_error(what), attempts_(attempts) {}

    int attempts() const noexcept { return attempts_; }

private:
    int attempts_;
};

/// Transport-level or 5xx-class failure. Only these are retried.
class TransientBackendError : public BackendError {
public:
    using BackendError::BackendError;
};

/// The extractor returned an empty completion. Distinct from a completion
/// that legitimately contains zero claims.
class EmptyCompletionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace veracity
