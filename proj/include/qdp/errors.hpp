// Exception types shared across the library. Each maps to one failure
// condition a caller can meaningfully distinguish.
#pragma once

#include <stdexcept>
#include <string>

namespace qdp {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input fails the Hermitian symmetry check.
class NotHermitianError : public Error {
public:
    explicit NotHermitianError(const std::string& msg) : Error(msg) {}
};

// Iterative diagonalization hit its sweep cap before reaching tolerance.
class NoConvergenceError : public Error {
public:
    explicit NoConvergenceError(const std::string& msg) : Error(msg) {}
};

// An eigenvalue lies outside the domain of the requested scalar function.
class DomainViolationError : public Error {
public:
    explicit DomainViolationError(const std::string& msg) : Error(msg) {}
};

class DimensionMismatchError : public Error {
public:
    explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

// A reference operator that must be strictly positive is singular.
class SingularReferenceError : public Error {
public:
    explicit SingularReferenceError(const std::string& msg) : Error(msg) {}
};

class InvalidPovmError : public Error {
public:
    explicit InvalidPovmError(const std::string& msg) : Error(msg) {}
};

class InfeasibleDimsError : public Error {
public:
    explicit InfeasibleDimsError(const std::string& msg) : Error(msg) {}
};

// Pick-function evaluation point collides with an atom or the measure support.
class PoleEvaluationError : public Error {
public:
    explicit PoleEvaluationError(const std::string& msg) : Error(msg) {}
};

class QuadratureFailureError : public Error {
public:
    explicit QuadratureFailureError(const std::string& msg) : Error(msg) {}
};

// A density operator failed one of its two invariants (message names which).
class InvalidStateError : public Error {
public:
    explicit InvalidStateError(const std::string& msg) : Error(msg) {}
};

class InvalidChannelError : public Error {
public:
    explicit InvalidChannelError(const std::string& msg) : Error(msg) {}
};

class InvalidPickSpecError : public Error {
public:
    explicit InvalidPickSpecError(const std::string& msg) : Error(msg) {}
};

class JsonFormatError : public Error {
public:
    explicit JsonFormatError(const std::string& msg) : Error(msg) {}
};

}  // namespace qdp
