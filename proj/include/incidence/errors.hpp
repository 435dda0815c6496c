#pragma once

#include <stdexcept>
#include <string>

namespace incidence {

/// Precondition violated by the caller (bad sizes, zero polynomial, duplicate points, ...).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed configuration or sweep text. line and column are 1-based; 0 when unknown.
class ParseError : public InvalidInput {
public:
    ParseError(const std::string& what, int line = 0, int column = 0)
        : InvalidInput(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what
                                : what),
          line(line), column(column)
    {
    }
    int line;
    int column;
};

/// Two scalars from different fields met in one operation.
class FieldMismatch : public std::invalid_argument {
public:
    explicit FieldMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A curve family whose basis is linearly dependent, or a curve outside its declared family.
class InvalidFamily : public std::invalid_argument {
public:
    explicit InvalidFamily(const std::string& what) : std::invalid_argument(what) {}
};

/// The partition search exhausted its ladder without a verified bisector.
class ConstructionFailure : public std::runtime_error {
public:
    explicit ConstructionFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Two independent counting routes disagreed, or a verified guarantee did not hold.
class InternalConsistencyError : public std::logic_error {
public:
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

} // namespace incidence
