#pragma once

#include <stdexcept>
#include <string>

namespace cycletwist {

// Base of all toolkit errors. Subclasses split into the three CLI exit
// classes: domain errors (bad but well-formed inputs), engine failures
// (the algorithm could not certify a result), and schema errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct EngineError : Error {
    using Error::Error;
};

struct SchemaError : Error {
    using Error::Error;
};

struct CycleError : DomainError {
    using DomainError::DomainError;
};

struct NotCoprime : DomainError {
    using DomainError::DomainError;
};

struct ModulusMismatch : DomainError {
    using DomainError::DomainError;
};

struct InvalidPair : DomainError {
    using DomainError::DomainError;
};

struct NotSphericalClass : DomainError {
    using DomainError::DomainError;
};

// hom + ext2 - chi went negative: impossible for correct inputs, so this
// signals a bug in hom_dim or canonicalization rather than bad data.
struct NegativeExtError : DomainError {
    using DomainError::DomainError;
};

struct ConstantProfile : DomainError {
    using DomainError::DomainError;
};

struct ZeroProfile : DomainError {
    using DomainError::DomainError;
};

struct ResourceLimit : DomainError {
    using DomainError::DomainError;
};

// The twist triangle's cohomology is not determined by the rule table.
// Carries enough context to report the partially resolved pieces.
struct UnresolvedMutation : EngineError {
    explicit UnresolvedMutation(const std::string& msg, std::string partial = "{}")
        : EngineError(msg), partial_json(std::move(partial)) {}
    std::string partial_json;  // known cohomology bounds, JSON text
};

struct NoDescentFound : EngineError {
    using EngineError::EngineError;
};

}  // namespace cycletwist
