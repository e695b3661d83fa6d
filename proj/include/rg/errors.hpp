#pragma once

#include <stdexcept>
#include <string>

namespace rg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The computation needs a field larger than the configured tower.
class Unsupported : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class OddLeadingOrder : public Error {
public:
    using Error::Error;
};

class NotRiccati : public Error {
public:
    using Error::Error;
};

class NotASolution : public Error {
public:
    using Error::Error;
};

class Degenerate : public Error {
public:
    using Error::Error;
};

class DegenerateDiscriminant : public Error {
public:
    using Error::Error;
};

class SingularParameterCombination : public Error {
public:
    using Error::Error;
};

class GenerationFailed : public Error {
public:
    using Error::Error;
};

class VerificationFailure : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t pos, std::string expected, const std::string& msg)
        : Error(msg + " at position " + std::to_string(pos) + " (expected " + expected + ")"),
          position(pos),
          expected(std::move(expected)) {}
    std::size_t position;
    std::string expected;
};

}  // namespace rg
