#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmt {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Radius or width below the grid scale.
class ScaleError : public Error {
public:
    using Error::Error;
};

// A module invariant or precondition that the caller was responsible for.
class ContractViolation : public Error {
public:
    using Error::Error;
};

class UndefinedRatio : public Error {
public:
    using Error::Error;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class Unreachable : public Error {
public:
    using Error::Error;
};

}  // namespace gmt
