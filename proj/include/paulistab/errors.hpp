#pragma once

#include <stdexcept>
#include <string>

namespace pstab {

// Base for all typed errors thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation landed on (or numerically at) a pole of a transfer element.
struct PoleHit : Error {
    using Error::Error;
};

// A range/count precondition was violated (grids, orders, bandwidths).
struct InvalidRange : Error {
    using Error::Error;
};

// Quaternion semi-norm too small to invert: the dq matrix is singular here.
struct SingularQuaternion : Error {
    using Error::Error;
};

// 2x2 matrix with |det| below the relative floor.
struct SingularMatrix : Error {
    using Error::Error;
};

// Frequency grid too coarse for a trustworthy winding number.
struct UnderResolved : Error {
    using Error::Error;
};

// Steady-state circuit solve has no usable solution.
struct Unsolvable : Error {
    using Error::Error;
};

// State-space assembly dimension mismatch.
struct AssemblyError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct NonMonotonicFrequency : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

} // namespace pstab
