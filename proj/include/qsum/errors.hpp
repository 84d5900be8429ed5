#pragma once

#include <stdexcept>
#include <string>

namespace qsum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two objects that must share (n, q) do not.
class DimensionError : public Error {
public:
    DimensionError(int n1, int q1, int n2, int q2);

    int lhs_n, lhs_q, rhs_n, rhs_q;
};

/// A parameter lies outside the range an operation is defined for.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Input JSON does not conform to a documented schema. `pointer()` is the
/// JSON pointer of the offending value.
class SchemaError : public Error {
public:
    SchemaError(std::string pointer, const std::string& what);

    const std::string& pointer() const noexcept { return pointer_; }

private:
    std::string pointer_;
};

/// Exact integer arithmetic left the 64-bit range.
class OverflowError : public Error {
public:
    using Error::Error;
};

}  // namespace qsum
