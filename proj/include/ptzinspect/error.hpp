#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptzinspect {

enum class ErrorCategory {
    invalid_argument,
    io,
    parse,
    invalid_setup,
    geometry,
    internal_consistency,
};

// Stable machine-readable name ("invalid-argument", "io-error", ...).
std::string_view category_name(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ParseError : public Error {
public:
    // line is 1-based; 0 means the error is not tied to a line.
    ParseError(const std::string& source, std::size_t line, const std::string& what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace ptzinspect
