#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace krda {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::string what, std::size_t expected, std::size_t actual)
        : Error(what + ": expected dimension " + std::to_string(expected) + ", got " +
                std::to_string(actual)),
          expected_(expected), actual_(actual) {}

    std::size_t expected() const noexcept { return expected_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t expected_;
    std::size_t actual_;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// No k <= 64 gives F(-2^k) < q < F(2^k).
class BracketNotFound : public Error {
public:
    explicit BracketNotFound(double q)
        : Error("no bracket [-2^k, 2^k] with k <= 64 contains the quantile " + std::to_string(q)),
          quantile_(q) {}

    double quantile() const noexcept { return quantile_; }

private:
    double quantile_;
};

class NonFiniteGradient : public Error {
public:
    using Error::Error;
};

class SingleClassData : public Error {
public:
    using Error::Error;
};

/// Malformed CSV or model document. Row and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
        : Error(format(what, row, column)), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t row, std::size_t column) {
        if (row == 0) return what;
        return what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")";
    }

    std::size_t row_;
    std::size_t column_;
};

class NonFiniteValue : public ParseError {
public:
    using ParseError::ParseError;
};

}  // namespace krda
