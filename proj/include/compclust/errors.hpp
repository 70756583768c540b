#pragma once

#include <stdexcept>
#include <string>

namespace compclust {

// Bad input data or configuration. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant. The CLI maps this to exit code 1.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace compclust
