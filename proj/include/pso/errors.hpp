#ifndef PSO_ERRORS_HPP
#define PSO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pso {

// Base class for rejected input data. The CLI maps these to exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A canonical multiset key required by the hypermatrix schema is absent.
class MissingRowError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A row is present but is not a valid stochastic vector.
class BadRowError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Two orderings of the same index tuple carry rows that disagree beyond
// tolerance; the symmetry assumption is violated by the data.
class SymmetryConflictError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Ordered (non-symmetric) input arrays whose p_{ij,k} vs p_{ji,k} gap is too
// large to be silently symmetrized.
class AsymmetryTooLargeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// An analysis method was invoked on an operator outside its hypotheses
// (e.g. the structural decider without a vertex permutation).
class InapplicableError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace pso

#endif
