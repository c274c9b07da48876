#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzzycal/analysis.hpp"
#include "fuzzycal/synth.hpp"
#include "fuzzycal/types.hpp"

namespace fuzzycal {

inline constexpr std::string_view kToolName = "fuzzycal";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct DatasetDescriptor {
    std::variant<std::string, GeneratorConfig> source;  // input path or generator
    std::size_t n = 0;
    std::int64_t num_classes = 0;
};

struct CalibrationReport {
    DatasetDescriptor dataset;
    BinConfig settings;
    double accuracy = 0.0;
    double ece = 0.0;
    double fce = 0.0;
    std::optional<double> overconfidence;
    std::vector<BinStats> crisp_bins;
    std::vector<BinStats> fuzzy_bins;
};

CalibrationReport make_report(const ValidatedDataset& dataset, DatasetDescriptor descriptor,
                              const BinConfig& settings);

enum class ReportFormat { kJson, kText };

/// Throws Error(kInvalidConfig) for an unknown name.
ReportFormat parse_report_format(std::string_view text);

/// Stable serializations. JSON key order is fixed, numbers carry 6
/// significant digits, absent values are null.
std::string render_report(const CalibrationReport& report, ReportFormat format);
std::string render_sweep(const SweepResult& result);
std::string render_reliability(const ReliabilityTable& table);

/// Writes to path or stdout ("-"). Throws Error(kIoError).
void write_report(const CalibrationReport& report, ReportFormat format, const std::string& path);

}  // namespace fuzzycal
