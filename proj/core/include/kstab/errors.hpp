#pragma once

#include <stdexcept>
#include <string>

namespace kstab {

// Bad user input: malformed expressions, schema violations, non-Reeb
// vectors, dimension mismatches. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A configured resource cap was hit (pair count, enumeration budget,
// retry cap). Maps to CLI exit code 3.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// A provable identity failed at runtime. Always a bug, never user error.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace kstab
