#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace latfox {

/// Base class for recoverable input errors (bad files, unknown names, ...).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition, e.g. mixed set universes.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class NameCollision : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Well-formed JSON that is not a valid diagram document or change set.
class DocumentError : public Error {
public:
    using Error::Error;
};

} // namespace latfox
