#pragma once

#include <optional>
#include <vector>

#include "fuzzycal/types.hpp"

namespace fuzzycal {

/// Upper edge of crisp bin m (1-based), m/M. Shared by every crisp code path
/// and by the r = 1 fuzzy partition, so that boundaries agree bit for bit.
inline double crisp_upper_edge(int m, int num_bins) noexcept {
    return static_cast<double>(m) / static_cast<double>(num_bins);
}

/// Bin m such that (m-1)/M < confidence <= m/M; confidence 0 maps to bin 1.
/// Expects confidence in [0, 1] and num_bins >= 2.
int crisp_bin_index(double confidence, int num_bins) noexcept;

/// Exactly num_bins entries ordered by bin index. Throws Error(kInvalidConfig)
/// when num_bins < 2.
std::vector<BinStats> crisp_bin_stats(const ValidatedDataset& dataset, int num_bins);

/// Expected calibration error: sum over bins of |B_m|/n * |acc - conf|.
double ece(const ValidatedDataset& dataset, int num_bins);

/// Mean confidence over incorrect predictions; nullopt when all are correct.
std::optional<double> overconfidence(const ValidatedDataset& dataset);

double accuracy(const ValidatedDataset& dataset);

/// Combines per-bin masses and gaps into the weighted calibration error
/// sum_m mass_m * gap_m / normalizer. Empty bins contribute nothing.
double weighted_gap(const std::vector<BinStats>& bins, double normalizer);

}  // namespace fuzzycal
