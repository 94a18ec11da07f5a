#pragma once

#include <stdexcept>
#include <string>

namespace ellseq {

/// Thrown when a factorization-dependent operation cannot proceed because
/// the work budget was exhausted before the input factored completely.
struct FactorizationExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown by operations whose precondition requires a fully factored value.
struct IncompleteFactorization : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an exact enumeration would exceed its guard bound.
struct EnumerationTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when an operation is called outside its stated hypotheses
/// (wrong prime classification, degenerate parameters, out-of-range n).
struct PreconditionViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a transcendental evaluator is called outside its domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Thrown when two independent computations of the same quantity disagree.
/// Signals an arithmetic bug; must never fire.
struct MismatchError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Thrown when an asserted congruence fails. Must never fire for
/// unramified primes; firing would falsify a proven statement.
struct CongruenceViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Thrown by the residue-class machinery when the requested divisor is
/// not unitary (gcd(d, modulus/d) != 1).
struct NotUnitary : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace ellseq
