#pragma once

#include <stdexcept>
#include <string>

namespace packlab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: wrong sizes, unparsable numbers, unknown names.
class ConfigError : public Error {
public:
    using Error::Error;
};

class DimensionError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// The input is well formed but violates a mathematical requirement.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class TruncationError : public Error {
public:
    using Error::Error;
};

class CheckpointError : public Error {
public:
    CheckpointError(const std::string& what, std::string path)
        : Error(what), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

}  // namespace packlab
