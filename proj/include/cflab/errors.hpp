#pragma once

#include <stdexcept>
#include <string>

namespace cflab {

// All library failures derive from Error. The CLI maps the concrete type to
// an exit code (data → 2, numerical → 3, invalid input → 1).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Grids that should share a shape do not.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A caller-supplied value is outside its domain (η ∉ (0,1], σ ≤ 0, degenerate box...).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// A numerical self-check failed: singular denominator, imaginary residue after
// an inverse transform, non-finite output.
class NumericalError : public Error {
public:
    using Error::Error;
};

// File system, parsing and decoding failures.
class DataError : public Error {
public:
    using Error::Error;
};

}  // namespace cflab
