#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzycal/types.hpp"

namespace fuzzycal {

enum class Metric { kEce, kFce };
enum class BinningMode { kCrisp, kFuzzy };

std::string_view to_string(Metric metric) noexcept;
std::string_view to_string(BinningMode mode) noexcept;

/// Inclusive range of bin counts, written LO..HI on the command line.
struct BinRange {
    int lo = 0;
    int hi = 0;

    bool contains(int m) const noexcept { return lo <= m && m <= hi; }
    bool overlaps(const BinRange& other) const noexcept {
        return lo <= other.hi && other.lo <= hi;
    }
    friend bool operator==(const BinRange&, const BinRange&) = default;
};

/// Parses "LO..HI" (or a single "M"); throws Error(kInvalidRange).
BinRange parse_bin_range(std::string_view text);
std::string to_string(const BinRange& range);

inline constexpr BinRange kSweepLimits{2, 64};
inline constexpr BinRange kDeltaLowDefault{2, 7};
inline constexpr BinRange kDeltaHighDefault{8, 15};

enum class DeltaMethod {
    kMeanDifference,  // |mean(low) - mean(high)|
    kPairwise,        // mean over (i in low, j in high) of |v_i - v_j|
};

struct SweepEntry {
    int num_bins = 0;
    double value = 0.0;
};

struct SweepResult {
    Metric metric = Metric::kEce;
    std::vector<SweepEntry> entries;  // ascending, contiguous
    std::optional<double> core_ratio;  // FCE only
    BinRange delta_low = kDeltaLowDefault;
    BinRange delta_high = kDeltaHighDefault;
    DeltaMethod delta_method = DeltaMethod::kMeanDifference;
    /// Absent when the sweep does not cover the delta ranges.
    std::optional<double> delta;
};

struct SweepOptions {
    double core_ratio = kDefaultCoreRatio;
    BinRange delta_low = kDeltaLowDefault;
    BinRange delta_high = kDeltaHighDefault;
    DeltaMethod delta_method = DeltaMethod::kMeanDifference;
    /// When true an uncovered delta range raises kRangeNotCovered instead of
    /// leaving delta empty.
    bool require_delta = false;
};

/// Evaluates the metric for every M in range (within [2..64]).
/// Throws Error(kInvalidRange) for a bad range.
SweepResult sweep(const ValidatedDataset& dataset, Metric metric, BinRange range,
                  const SweepOptions& options = {});

/// Bin-sensitivity statistic between two disjoint sub-ranges of a sweep.
/// Throws Error(kRangeNotCovered) if any M of either range lacks an entry,
/// Error(kInvalidRange) if the ranges overlap or are malformed.
double delta(std::span<const SweepEntry> entries, BinRange low = kDeltaLowDefault,
             BinRange high = kDeltaHighDefault,
             DeltaMethod method = DeltaMethod::kMeanDifference);

struct ReliabilityRow {
    int bin_index = 0;
    double lower_edge = 0.0;
    double upper_edge = 0.0;
    double mass = 0.0;
    double mass_fraction = 0.0;
    std::optional<double> accuracy;
    std::optional<double> mean_confidence;
    std::optional<double> gap;
};

struct ReliabilityTable {
    BinningMode mode = BinningMode::kCrisp;
    int num_bins = 0;
    std::optional<double> core_ratio;  // fuzzy only
    std::vector<ReliabilityRow> rows;  // always num_bins rows
};

ReliabilityTable reliability_data(const ValidatedDataset& dataset, int num_bins,
                                  BinningMode mode, double core_ratio = kDefaultCoreRatio);

ReliabilityTable reliability_from_bins(const std::vector<BinStats>& bins, std::size_t n,
                                       BinningMode mode, std::optional<double> core_ratio);

int nonzero_mass_bins(const std::vector<BinStats>& bins) noexcept;

}  // namespace fuzzycal
