#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace dml {

// Error taxonomy shared by the library and the CLI exit codes.
enum class errc { domain = 1, budget = 2, parse = 3, internal = 4 };

class error : public std::runtime_error {
public:
    error(errc code, const std::string& message, std::string location = {})
        : std::runtime_error(message), code_(code), location_(std::move(location)) {}

    errc code() const noexcept { return code_; }
    const std::string& location() const noexcept { return location_; }

private:
    errc code_;
    std::string location_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg, const std::string& loc = {}) {
    throw error(code, msg, loc);
}

}  // namespace dml
