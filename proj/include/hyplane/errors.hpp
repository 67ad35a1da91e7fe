#pragma once

#include <stdexcept>
#include <string>

namespace hyplane {

// Base for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Coincident or nearly coincident boundary points.
class DegenerateError : public Error {
  public:
    using Error::Error;
};

// A triple or polygon given in clockwise order.
class OrientationError : public Error {
  public:
    using Error::Error;
};

// A Moebius matrix whose determinant vanishes.
class InvalidMapError : public Error {
  public:
    using Error::Error;
};

// Sampling request on a support of infinite or zero mass.
class MeasureError : public Error {
  public:
    using Error::Error;
};

// Operation called outside its documented domain.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// Malformed tiling document.
class ParseError : public Error {
  public:
    using Error::Error;
};

} // namespace hyplane
