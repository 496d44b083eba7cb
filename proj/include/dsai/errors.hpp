#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dsai {

// Bad vertex ids, malformed files, arguments outside an operation's domain.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An instance failed its structural checks; carries one line per violation.
struct ValidationError : std::runtime_error {
    std::vector<std::string> violations;
    explicit ValidationError(std::vector<std::string> v);
};

// Work or memory would exceed a configured guard.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The operation is not defined for the given radius.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dsai
