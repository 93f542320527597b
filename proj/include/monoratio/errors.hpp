#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace monoratio {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error("syntax error at offset " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Evaluation left the domain of an operation (log of non-positive, division by
/// zero, 0^negative, ...).
class DomainFault : public std::runtime_error {
public:
    DomainFault(double x, const std::string& what)
        : std::runtime_error(what + " at x = " + std::to_string(x)), x_(x) {}

    double x() const noexcept { return x_; }

private:
    double x_;
};

enum class ValidationKind { ZeroG, ZeroGPrime, SignChange, BadWindow, BadGrid, DomainFault };

const char* to_string(ValidationKind kind);

/// A function pair violates the standing assumptions on g and g'.
class ValidationError : public std::runtime_error {
public:
    ValidationError(ValidationKind kind, double x, const std::string& detail);

    ValidationKind kind() const noexcept { return kind_; }
    double x() const noexcept { return x_; }

private:
    ValidationKind kind_;
    double x_;
};

/// Sign sequence does not match a single-switch pattern.
class UnclassifiableError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Near-zero set of rho-tilde has more than one component.
class NonIntervalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BadBracket : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace monoratio
