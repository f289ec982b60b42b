#pragma once

#include <stdexcept>
#include <string>

namespace cavstat {

// Base for every error raised by the library. Callers that only want to
// report and move on can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Steady-state system has no unique solution (kappa = 0, or pivot breakdown).
class SingularSystem : public Error {
public:
    using Error::Error;
};

// <a^dag a> vanishes so g^(k) cannot be normalized.
class DegenerateIntensity : public Error {
public:
    using Error::Error;
};

// A closed form was evaluated at a point where it diverges (kappa = 0).
class DivergentLimit : public Error {
public:
    using Error::Error;
};

// Time integration did not reach the requested stationarity.
class NonConvergence : public Error {
public:
    using Error::Error;
};

// The Liouvillian kernel is not one-dimensional.
class DegenerateNullSpace : public Error {
public:
    using Error::Error;
};

// Bad user input: unknown key, malformed value, out-of-range parameter.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace cavstat
