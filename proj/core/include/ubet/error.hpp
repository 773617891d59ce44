#pragma once

#include <stdexcept>
#include <string>

namespace ubet {

enum class Errc {
    invalid_argument,
    insufficient_funds,
    market_not_open,
    market_not_resolved,
    betting_still_open,
    already_resolved,
    unauthorized,
    unknown_outcome,
    unfillable,
};

const char* to_string(Errc code) noexcept;

/// Rejected operation. State is left untouched whenever this is thrown.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace ubet
