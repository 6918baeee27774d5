#pragma once

#include <stdexcept>
#include <string>

namespace discgeom {

// Base class for all errors raised by the library. The message always names
// the failed check and, where available, a witness (indices, ids, values).
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or unparsable input (files, matrices of wrong shape).
struct InputError : Error {
    using Error::Error;
};

// A combinatorial disc check failed (wrong Euler characteristic, several
// boundary cycles, non-manifold edge, ...).
struct TopologyError : Error {
    using Error::Error;
};

// Metric data is geometrically inconsistent (degenerate triangle, ...).
struct GeometryError : Error {
    using Error::Error;
};

// A stated hypothesis of a construction does not hold for the given data.
struct HypothesisError : Error {
    using Error::Error;
};

// Graph or fiber connectivity requirement failed.
struct ConnectivityError : Error {
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

// Instance too large for an exact-mode algorithm.
struct SizeError : Error {
    using Error::Error;
};

// A sampling grid is too coarse to resolve the data it discretizes.
struct ResolutionError : Error {
    using Error::Error;
};

// A declared precondition of an operation was not met.
struct PreconditionError : Error {
    using Error::Error;
};

}  // namespace discgeom
