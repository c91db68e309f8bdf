#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace silver {

/// A metric was asked to score an input it has no value for
/// (no word tokens, empty candidate, empty corpus).
class UndefinedInput : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A dependency parse that is not a single-rooted tree.
class MalformedParse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad thresholds or an unreadable config file. Maps to CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or badly encoded input data. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& source, std::size_t line, const std::string& what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
          line_(line) {}
    explicit DataError(const std::string& what) : std::runtime_error(what) {}

    /// 1-based line number, 0 when not tied to a line.
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

}  // namespace silver
