#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crnkit {

/// Malformed network file. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A numerical kernel could not certify its answer (cycling, ill conditioning).
class NumericalIndeterminacy : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace crnkit
