#include "fuzzycal/error.hpp"

namespace fuzzycal {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kEmptyInput: return "EmptyInput";
        case ErrorCode::kOutOfRange: return "OutOfRange";
        case ErrorCode::kNegativeLabel: return "NegativeLabel";
        case ErrorCode::kInvalidConfig: return "InvalidConfig";
        case ErrorCode::kInvalidRange: return "InvalidRange";
        case ErrorCode::kRangeNotCovered: return "RangeNotCovered";
        case ErrorCode::kParseError: return "ParseError";
        case ErrorCode::kProbSumError: return "ProbSumError";
        case ErrorCode::kIoError: return "IoError";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

RowError::RowError(ErrorCode code, std::size_t row, const std::string& reason)
    : Error(code, "row " + std::to_string(row) + ": " + reason), row_(row) {}

}  // namespace fuzzycal
