#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mtvq {

/// Failure categories surfaced by the library. The CLI maps these onto exit
/// codes, so every throw site picks the most specific kind.
enum class ErrorKind {
    Parse,      // malformed text (JSON syntax, bitstring characters)
    Schema,     // well-formed input with missing or mistyped fields
    Invariant,  // values that violate a domain invariant
    Range,      // index or argument outside its valid range
    Bound,      // problem too large for enumeration or simulation
    Numeric,    // non-finite objective value during optimization
    Io,         // filesystem failure
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Schema: return "schema error";
    case ErrorKind::Invariant: return "invalid input";
    case ErrorKind::Range: return "out of range";
    case ErrorKind::Bound: return "size bound exceeded";
    case ErrorKind::Numeric: return "numeric error";
    case ErrorKind::Io: return "I/O error";
    }
    return "error";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

} // namespace mtvq
