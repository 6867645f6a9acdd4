#pragma once

#include <stdexcept>
#include <string>

namespace darboux {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- vector algebra --------------------------------------------------------

class ZeroVector : public Error {
public:
    ZeroVector() : Error("zero vector has no causal character") {}
};

class NotTimelike : public Error {
public:
    explicit NotTimelike(const std::string& msg) : Error(msg) {}
};

// -- jets -------------------------------------------------------------------

class DivisionByZeroConstantTerm : public Error {
public:
    DivisionByZeroConstantTerm()
        : Error("jet division: divisor has zero constant term") {}
};

class NonzeroInnerConstant : public Error {
public:
    NonzeroInnerConstant()
        : Error("jet composition: inner series must have zero constant term") {}
};

class NonInvertibleSeries : public Error {
public:
    explicit NonInvertibleSeries(const std::string& msg) : Error(msg) {}
};

class OrderExceeded : public Error {
public:
    explicit OrderExceeded(const std::string& msg) : Error(msg) {}
};

/// A function left its domain of definition (log of a non-positive
/// constant term, fractional power of a negative base, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// -- expressions ------------------------------------------------------------

/// Syntax error with the byte offset of the offending token.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string expected, std::string found)
        : Error("parse error at byte " + std::to_string(offset) + ": expected "
                + expected + ", found " + found),
          offset(offset),
          expected(std::move(expected)),
          found(std::move(found)) {}

    std::size_t offset;
    std::string expected;
    std::string found;
};

class UnboundVariable : public Error {
public:
    explicit UnboundVariable(const std::string& name)
        : Error("unbound variable '" + name + "'"), name(name) {}
    std::string name;
};

// -- surfaces and curves ------------------------------------------------------

class DegenerateTangentPlane : public Error {
public:
    explicit DegenerateTangentPlane(const std::string& msg) : Error(msg) {}
};

class NotSpacelikeHere : public Error {
public:
    explicit NotSpacelikeHere(const std::string& msg) : Error(msg) {}
};

class NonRegularCurve : public Error {
public:
    explicit NonRegularCurve(const std::string& msg) : Error(msg) {}
};

// -- images and invariants -------------------------------------------------

/// The defining inequality of a Darboux image fails at the requested point.
class DomainViolation : public Error {
public:
    explicit DomainViolation(const std::string& msg) : Error(msg) {}
};

class DegenerateDerivative : public Error {
public:
    explicit DegenerateDerivative(const std::string& msg) : Error(msg) {}
};

class VNotOnSphere : public Error {
public:
    explicit VNotOnSphere(const std::string& msg) : Error(msg) {}
};

// -- scenes -------------------------------------------------------------------

class SceneError : public Error {
public:
    explicit SceneError(const std::string& msg) : Error(msg) {}
};

}  // namespace darboux
