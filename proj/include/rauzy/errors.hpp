#pragma once

#include <stdexcept>
#include <string>

namespace rauzy {

// Base class for all library errors. CLI maps these to exit code 1,
// except HorizonExceeded which maps to exit code 2 (honest "don't know").
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownLetterError : Error {
    explicit UnknownLetterError(char c)
        : Error(std::string("unknown letter '") + c + "'") {}
};

struct InvalidSourceError : Error {
    using Error::Error;
};

struct HorizonExceededError : Error {
    using Error::Error;
};

struct NotPrimitiveError : Error {
    using Error::Error;
};

struct NotAFactorPathError : Error {
    using Error::Error;
};

struct InvalidPathError : Error {
    using Error::Error;
};

struct BispecialAtOrderError : Error {
    explicit BispecialAtOrderError(long long k)
        : Error("bispecial factor of length exactly " + std::to_string(k)), order(k) {}
    long long order;
};

struct GraphIsCycleError : Error {
    using Error::Error;
};

struct NotSupportEdgeError : Error {
    using Error::Error;
};

struct NoSupportEdgeError : Error {
    using Error::Error;
};

struct DegenerateResultError : Error {
    using Error::Error;
};

struct PathCapExceededError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace rauzy
