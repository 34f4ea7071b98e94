#pragma once

#include <stdexcept>
#include <string>

namespace foldex {

enum class ErrorKind {
    DegenerateInput,
    OutOfRange,
    BadParam,
    Parse,
};

const char* to_string(ErrorKind kind) noexcept;

// All library failures are reported through this exception type; callers
// branch on kind() rather than on the message text.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace foldex
