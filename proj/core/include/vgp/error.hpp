#pragma once

#include <stdexcept>
#include <string>

namespace vgp {

/// Bad user input: malformed files, unknown names, invalid configuration.
/// The CLI maps this to its input-error exit code.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A serialized expression tree could not be parsed.
class ParseError : public InputError {
public:
    ParseError(const std::string& message, std::string token)
        : InputError(message), token_(std::move(token)) {}

    const std::string& token() const noexcept { return token_; }

private:
    std::string token_;
};

} // namespace vgp
