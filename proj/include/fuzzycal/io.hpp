#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "fuzzycal/types.hpp"

namespace fuzzycal {

enum class InputFormat { kAuto, kColumns, kProbvec };

/// Throws Error(kInvalidConfig) for an unknown name.
InputFormat parse_input_format(std::string_view text);

inline constexpr std::string_view kColumnsHeader = "confidence,predicted_label,true_label";
inline constexpr double kProbSumTolerance = 1e-6;

/// Reads a prediction file.
///
/// columns: comma-separated `confidence,predicted_label,true_label`, one
/// record per line, header line optional.
/// probvec: one JSON object per line with `probs` (array of K reals summing
/// to 1 within 1e-6) and `true_label`; confidence is max(probs) and the
/// predicted label its lowest index.
/// auto: probvec if the first non-empty line starts with '{'.
///
/// Blank lines are skipped. Row numbers in errors are 1-based file lines.
/// Throws Error(kIoError), RowError(kParseError | kOutOfRange |
/// kNegativeLabel | kProbSumError), Error(kEmptyInput).
ValidatedDataset parse_predictions(const std::filesystem::path& path,
                                   InputFormat format = InputFormat::kAuto);
ValidatedDataset parse_predictions(std::istream& in, InputFormat format = InputFormat::kAuto);

/// Columns-format serialization with header; confidences use the shortest
/// decimal that round-trips exactly.
void write_columns(const ValidatedDataset& dataset, std::ostream& out);
std::string to_columns(const ValidatedDataset& dataset);

/// Locale-independent decimal formatting.
std::string format_significant(double value, int digits = 6);
std::string format_shortest(double value);

/// Rounds to `digits` significant decimal digits (same rounding as
/// format_significant).
double round_significant(double value, int digits = 6);

/// Writes text to path, or to stdout when path is "-". Throws Error(kIoError).
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace fuzzycal
