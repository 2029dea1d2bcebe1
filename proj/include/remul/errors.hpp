#pragma once

#include <stdexcept>
#include <string>

namespace remul {

// Base class for rejected inputs and violated preconditions. The CLI maps
// these to a dedicated exit code, distinct from usage and internal errors.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Partition widths sum to more than the array width.
class WidthOverflow : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A partition width of zero was requested.
class ZeroWidth : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// The requested partition list cannot be expressed with one pair of
// horizontal/vertical control vectors.
class UnsupportedPartitioning : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// An operand does not fit in its partition's bit-width.
class OperandOverflow : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace remul
