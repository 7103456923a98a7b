#pragma once

#include <stdexcept>

namespace so3 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument: non-unit axis, non-orthogonal matrix, bad file.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// Loops with different basepoints cannot be concatenated.
class BasepointMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// The torus chart is undefined when the rotated z-axis points to the south pole.
class SouthPoleSingular : public Error {
 public:
  using Error::Error;
};

/// A path has a step too coarse for the requested operation.
class RefinementRequired : public Error {
 public:
  using Error::Error;
};

/// A lifted loop closed on neither +q0 nor -q0 within tolerance.
class NumericalDrift : public Error {
 public:
  using Error::Error;
};

class NotNullHomotopic : public Error {
 public:
  using Error::Error;
};

class PoleSearchFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace so3
