#pragma once

#include <stdexcept>
#include <string>

namespace elbowkit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input sequence rises by more than the allowed tolerance.
struct NonMonotoneError : Error {
    using Error::Error;
};

struct NonFiniteError : Error {
    using Error::Error;
};

struct EmptyCurveError : Error {
    using Error::Error;
};

// k_max == 0: the curve is constant, the chord construction is undefined.
struct DegenerateCurveError : Error {
    using Error::Error;
};

struct InvalidNError : Error {
    using Error::Error;
};

struct SingularFitError : Error {
    using Error::Error;
};

struct UnstableSeriesError : Error {
    using Error::Error;
};

struct NoRootError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace elbowkit
