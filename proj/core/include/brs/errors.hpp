#pragma once

#include <stdexcept>
#include <string>

namespace brs {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Basis matrix numerically singular at the working precision.
struct SingularBasis : Error {
  using Error::Error;
};

// A membership or floor decision fell within tolerance of a boundary.
struct BoundaryAmbiguity : Error {
  using Error::Error;
};

// A cone coefficient landed within tolerance of an integer, or t_j within
// tolerance of 1.  Cannot occur for exactly irrational input.
struct DegenerateCoefficient : Error {
  using Error::Error;
};

// Two distinct integer shifts both placed a point inside the region.
struct InjectivityViolation : Error {
  using Error::Error;
};

// A hyperplane level did not contain exactly one lattice point over the region.
struct CardinalityViolation : Error {
  using Error::Error;
};

// Orbit scan exhausted its cap without finding a return.
struct NonReturning : Error {
  using Error::Error;
};

struct VerificationFailure : Error {
  using Error::Error;
};

struct EmptyColumn : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace brs
