#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ramanujan {

enum class ErrorCode {
    invalid_input,
    not_found,
    unsupported_range,
    resource_limit,
    data_gap,
    parse_error,
    unavailable,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::unsupported_range: return "unsupported-range";
    case ErrorCode::resource_limit: return "resource-limit";
    case ErrorCode::data_gap: return "data-gap";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::unavailable: return "unavailable";
    }
    return "unknown";
}

// Every library failure surfaces as this type; the code drives CLI exit status.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace ramanujan
