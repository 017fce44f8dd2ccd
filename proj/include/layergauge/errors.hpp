#pragma once

#include <stdexcept>
#include <string>

namespace layergauge {

// Base class for every error the toolkit raises on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Tensor shapes that do not line up (messages name the offending axis).
class DimensionError : public Error {
public:
    using Error::Error;
};

// Structurally invalid parameters: bad strides, out-of-range layer indices,
// non-integral output sizes, unknown architecture names.
class ConfigError : public Error {
public:
    using Error::Error;
};

// A file that is not in the expected container format (bad magic, bad version).
class FormatError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failures: unreadable, unwritable, truncated mid-read.
class IoError : public Error {
public:
    using Error::Error;
};

// A weight bundle that fails validation against an architecture.
class WeightError : public Error {
public:
    using Error::Error;
};

// Invalid input data: degenerate datasets, NaN features, bad manifests.
class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace layergauge
