#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fuzzycal {

enum class ErrorCode {
    kEmptyInput,
    kOutOfRange,
    kNegativeLabel,
    kInvalidConfig,
    kInvalidRange,
    kRangeNotCovered,
    kParseError,
    kProbSumError,
    kIoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised for data problems tied to a specific input row (0-based).
class RowError : public Error {
public:
    RowError(ErrorCode code, std::size_t row, const std::string& reason);

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

}  // namespace fuzzycal
