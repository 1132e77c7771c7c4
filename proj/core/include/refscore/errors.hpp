#ifndef REFSCORE_ERRORS_HPP
#define REFSCORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace refscore {

// Domain error carrying a stable machine-readable code ("zero-variance",
// "empty-profile", ...) alongside the human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace refscore

#endif
