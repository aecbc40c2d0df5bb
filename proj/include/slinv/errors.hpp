#pragma once

#include <stdexcept>
#include <string>

namespace slinv {

// Base for every error raised by the library. The CLI maps the concrete
// subclasses onto exit statuses.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed inputs: mismatched list lengths, grids that are too small,
// inconsistent grid sizes between pipeline stages.
class StructuralError : public Error {
public:
    using Error::Error;
};

// Numerical failure: nonpositive I+F, bracket-count mismatch, a singular
// row system, a value that is not an eigenvalue.
class NumericalError : public Error {
public:
    using Error::Error;
};

// File system and parse failures.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace slinv
