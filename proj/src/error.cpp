#include "ptzinspect/error.hpp"

namespace ptzinspect {

std::string_view category_name(ErrorCategory category) noexcept {
    switch (category) {
    case ErrorCategory::invalid_argument: return "invalid-argument";
    case ErrorCategory::io: return "io-error";
    case ErrorCategory::parse: return "parse-error";
    case ErrorCategory::invalid_setup: return "invalid-setup";
    case ErrorCategory::geometry: return "geometry-error";
    case ErrorCategory::internal_consistency: return "internal-consistency";
    }
    return "unknown";
}

namespace {

std::string located(const std::string& source, std::size_t line, const std::string& what) {
    if (line == 0) {
        return source + ": " + what;
    }
    return source + ":" + std::to_string(line) + ": " + what;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& what)
    : Error(ErrorCategory::parse, located(source, line, what)), line_(line) {}

}  // namespace ptzinspect
