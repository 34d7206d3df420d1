#pragma once

#include <stdexcept>
#include <string>

namespace smoothpile {

/// Base class for all errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A vertex-level operation was asked for a guard-band vertex.
struct BoundaryVertexError : Error {
    using Error::Error;
};

/// A summation region reaches into the guard band.
struct RegionTouchesGuardBandError : Error {
    using Error::Error;
};

/// Difference of the two slopes is not a primitive vector.
struct NotCoprimeError : Error {
    using Error::Error;
};

/// Input field violates the superharmonicity precondition.
struct NotSuperharmonicError : Error {
    using Error::Error;
};

/// A smoothing step changed values next to the frozen guard band.
struct WindowTooSmallError : Error {
    using Error::Error;
};

/// Smoothing did not reach a fixed point within the iteration cap.
struct IterationCapError : Error {
    using Error::Error;
};

/// Brute-force enumeration refused an instance above its budget.
struct TooLargeError : Error {
    using Error::Error;
};

struct NotStableError : Error {
    using Error::Error;
};

struct SourceNotAtThresholdError : Error {
    using Error::Error;
};

/// No admissible wave source exists in the prepared state.
struct NoValidSourceError : Error {
    using Error::Error;
};

/// A documented operation precondition does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

/// A sand value outside the render palette was encountered.
struct ValueOutOfPaletteError : Error {
    using Error::Error;
};

/// Malformed file or command line input.
struct BadInputError : Error {
    using Error::Error;
};

}  // namespace smoothpile
