#ifndef FMI_ERRORS_HPP
#define FMI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fmi {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input validation failures (CLI exit code 1).
class InvalidInterval : public Error {
public:
    using Error::Error;
};
class TouchingIntervals : public Error {
public:
    using Error::Error;
};
class OverlappingIntervals : public Error {
public:
    using Error::Error;
};
class PoleAtEndpoint : public Error {
public:
    using Error::Error;
};
class DomainError : public Error {
public:
    using Error::Error;
};
class RegionsOverlap : public Error {
public:
    using Error::Error;
};
class DimensionMismatch : public Error {
public:
    using Error::Error;
};
class InvalidDensityMatrix : public Error {
public:
    using Error::Error;
};
class InvalidPath : public Error {
public:
    using Error::Error;
};

// Numerical failures (CLI exit code 2).
class QuadratureFailure : public Error {
public:
    using Error::Error;
};
class SpectrumOutOfRange : public Error {
public:
    using Error::Error;
};

} // namespace fmi

#endif
