#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace addcomb {

/// Failure categories. Each precondition of the isoperimetric engines has its
/// own code so callers (and the CLI) can name what went wrong.
enum class ErrorCode {
    size,              // group or search space beyond a configured limit
    domain,            // malformed element, set, or group mismatch
    not_normalized,    // 0 is not in S
    not_generating,    // S does not generate the group
    order_too_small,   // |G| < 2k - 1
    not_separable,     // no set induces the requested separation
    precondition,      // other mathematical hypothesis not met
    parse,             // malformed literal or record
    config,            // bad harness configuration
    internal,          // postcondition violated; always a bug
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::size: return "size";
    case ErrorCode::domain: return "domain";
    case ErrorCode::not_normalized: return "not_normalized";
    case ErrorCode::not_generating: return "not_generating";
    case ErrorCode::order_too_small: return "order_too_small";
    case ErrorCode::not_separable: return "not_separable";
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::parse: return "parse";
    case ErrorCode::config: return "config";
    case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code)
    {
    }

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what)
{
    if (!condition)
        fail(code, what);
}

} // namespace addcomb
