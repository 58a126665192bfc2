#ifndef TLJ_ERRORS_HPP
#define TLJ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tlj {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// |U - r^2| below pole tolerance for some even r; caller should use the
// Floquet route instead.
struct PoleProximity : Error {
    using Error::Error;
};

// Requested V lies outside the tabulated boundary-curve range.
struct OutOfTabulation : Error {
    using Error::Error;
};

// Tangency test has no usable slope at the candidate point.
struct DegenerateSlope : Error {
    using Error::Error;
};

// Sample point too close to (or outside) the grid boundary for the
// interpolation stencil.
struct OutOfDomain : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

struct GeometryError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

struct NoPeak : Error {
    using Error::Error;
};

}  // namespace tlj

#endif
