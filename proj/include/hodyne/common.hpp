#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hodyne {

// Thrown by every data-file loader; carries the source name and 1-based line.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& source, int line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          source_(source), line_(line) {}

    const std::string& source() const { return source_; }
    int line() const { return line_; }

private:
    std::string source_;
    int line_;
};

// Whitespace-separated fields of one line, '#' starts a comment.
std::vector<std::string> split_fields(std::string_view line);

// Comma-separated list, no surrounding whitespace expected.
std::vector<std::string> split_commas(std::string_view text);

std::string to_lower(std::string_view text);

}  // namespace hodyne
