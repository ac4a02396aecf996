#pragma once

#include <stdexcept>
#include <string>

namespace csl {

/// Bad input: violated precondition, malformed scenario, unknown key or unit.
/// `key()` names the offending input field when one is known.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what, std::string key = {})
        : std::invalid_argument(what), key_(std::move(key)) {}
    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// A numerical procedure failed to reach its tolerance or diverged.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace csl
