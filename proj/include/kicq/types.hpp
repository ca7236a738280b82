#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kicq {

using VertexId = std::uint32_t;
using KeywordId = std::uint32_t;

inline constexpr std::uint32_t kInvalidId = 0xffffffffu;

/// Error categories, mapped to process exit codes by the CLI
/// (input/io/domain -> 2, internal -> 3).
enum class ErrorKind {
    Io,          // file missing, unreadable, truncated
    Format,      // malformed input content
    Domain,      // valid syntax, invalid request (unknown term, bad parameter)
    Internal,    // invariant violation inside the library
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

inline std::string lowercase_trim(std::string s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    std::string out = s.substr(b, e - b);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

}  // namespace kicq
