#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ptzinspect {

// Reads a whole file. Missing or unreadable files throw Error(io).
std::string read_text_file(const std::filesystem::path& path);

// Writes via a sibling temporary file and a rename, so a failed write never
// leaves a partial output behind. Throws Error(io).
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

// One logical input line: 1-based number and whitespace-separated fields
// with any '#' comment removed. Blank and comment-only lines are dropped.
struct TextRecord {
    std::size_t line{0};
    std::vector<std::string> fields;
};

std::vector<TextRecord> split_records(std::string_view text);

// Strict decimal parse of a whole token; anything else throws ParseError.
double parse_double(const std::string& token, const std::string& source, std::size_t line);

// %.17g, enough digits to round-trip any double.
std::string format_double(double v);

}  // namespace ptzinspect
