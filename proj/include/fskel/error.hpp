#pragma once

#include <stdexcept>
#include <string>

namespace fskel {

// Base of every error raised by the library. Each subclass corresponds to a
// named failure mode of an operation; callers that only care about "it
// failed" can catch Error.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ScaleOneError : public Error {
public:
    ScaleOneError() : Error("similitude has scale 1; no unique fixed point") {}
};

class CapExceededError : public Error {
public:
    using Error::Error;
};

class NotStableError : public Error {
public:
    using Error::Error;
};

class NotSingleMatrixError : public Error {
public:
    NotSingleMatrixError() : Error("IFS is not of single-matrix form") {}
};

class NotConnectedError : public Error {
public:
    NotConnectedError() : Error("Hata graph is not connected; attractor is disconnected") {}
};

// Raised when the neighbor graph could not be closed under the vertex cap.
class InconclusiveError : public Error {
public:
    using Error::Error;
};

class NoWalkError : public Error {
public:
    using Error::Error;
};

class DegenerateCycleError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    ValidationError(const std::string& field, const std::string& what)
        : Error(field + ": " + what), field_(field) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace fskel
