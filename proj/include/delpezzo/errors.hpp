#pragma once

#include <stdexcept>
#include <string>

namespace delpezzo {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Mismatched surface index or vector length.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain of an operation (bad r, non-root, non-nef...).
class DomainError : public Error {
public:
    using Error::Error;
};

class ArithmeticOverflow : public Error {
public:
    using Error::Error;
};

class ContractionError : public Error {
public:
    using Error::Error;
};

class ClassificationError : public Error {
public:
    using Error::Error;
};

class OrbitOverflow : public Error {
public:
    using Error::Error;
};

class NotInOrbit : public Error {
public:
    using Error::Error;
};

// Malformed input: duplicate points, bad JSON, floats where exact values are required.
class InputError : public Error {
public:
    using Error::Error;
};

// An interpolation or kernel dimension differs from the value the geometry dictates.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

class SamplingError : public Error {
public:
    using Error::Error;
};

class ModelMismatch : public Error {
public:
    using Error::Error;
};

class GenerationFailure : public Error {
public:
    using Error::Error;
};

class CheckFailure : public Error {
public:
    using Error::Error;
};

// Two independent enumeration routes disagreed.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace delpezzo
