#pragma once

#include <stdexcept>
#include <string>

namespace specfd {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed complex input (empty maximal list, bad vertex ids, duplicates).
class BuildError : public Error {
public:
    using Error::Error;
};

/// Degenerate geometric realization (missing coordinates, affinely dependent faces).
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A point does not lie in the realized complex.
class OutsideComplexError : public Error {
public:
    using Error::Error;
};

/// Unknown poset element or face.
class LookupError : public Error {
public:
    using Error::Error;
};

/// A size cap for exhaustive enumeration was exceeded.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A map that should be monotone (or otherwise structurally consistent) is not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// An algebra or Hilbert-space element was used at the wrong refinement level.
class LevelError : public Error {
public:
    using Error::Error;
};

/// A sampled function is undefined or non-finite at a vertex.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// A Dirac weight matrix violates the graph sparsity condition.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// A graded operation received a matrix without definite parity.
class ParityError : public Error {
public:
    using Error::Error;
};

/// A metric weight function is nonpositive at a sampled vertex.
class MetricError : public Error {
public:
    using Error::Error;
};

/// A model was requested with too few vertices or a nonpositive spacing.
class SizeError : public Error {
public:
    using Error::Error;
};

/// A density matrix has vanishing graded trace and cannot be normalized.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// Stencil weights are not a convex combination, or a stencil point is missing.
class SynthesisError : public Error {
public:
    using Error::Error;
};

/// Too few positive-error rows to fit a convergence rate.
class RateError : public Error {
public:
    using Error::Error;
};

/// A function expression could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace specfd
