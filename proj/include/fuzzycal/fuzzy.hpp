#pragma once

#include <vector>

#include "fuzzycal/types.hpp"

namespace fuzzycal {

/// Trapezoidal fuzzy partition of [0, 1] into M bins.
///
/// Bin m is centred on c_m = (m - 0.5)/M with a flat core of width r/M.
/// Adjacent cores are joined by complementary linear ramps, so memberships
/// sum to one everywhere and at most two bins are active at any point. The
/// first core starts at 0 and the last ends at 1. With r = 1 the ramps
/// vanish and the partition coincides with crisp binning, including the
/// half-open-left treatment of internal edges.
class FuzzyPartition {
public:
    /// Throws Error(kInvalidConfig) unless num_bins >= 2 and 0 < core_ratio <= 1.
    FuzzyPartition(int num_bins, double core_ratio);

    int num_bins() const noexcept { return num_bins_; }
    double core_ratio() const noexcept { return core_ratio_; }
    bool crisp_limit() const noexcept { return core_ratio_ == 1.0; }

    // Geometry accessors take 1-based bin indices.
    double center(int m) const noexcept;
    double core_lo(int m) const noexcept { return core_lo_[idx(m)]; }
    double core_hi(int m) const noexcept { return core_hi_[idx(m)]; }
    /// Left end of the support: previous core's upper edge, or 0 for bin 1.
    double support_lo(int m) const noexcept { return m == 1 ? 0.0 : core_hi_[idx(m - 1)]; }
    /// Right end of the support: next core's lower edge, or 1 for bin M.
    double support_hi(int m) const noexcept {
        return m == num_bins_ ? 1.0 : core_lo_[idx(m + 1)];
    }

    const std::vector<double>& core_lo_edges() const noexcept { return core_lo_; }
    const std::vector<double>& core_hi_edges() const noexcept { return core_hi_; }

    /// mu_m(p). At a ramp-free edge (r = 1) the point belongs to the lower bin.
    double membership(double confidence, int m) const noexcept;

    /// All M memberships at p; at most two entries are nonzero.
    std::vector<double> membership_vector(double confidence) const;

private:
    static std::size_t idx(int m) noexcept { return static_cast<std::size_t>(m - 1); }

    int num_bins_;
    double core_ratio_;
    std::vector<double> core_lo_;
    std::vector<double> core_hi_;
};

FuzzyPartition build_partition(int num_bins, double core_ratio);

inline double membership(const FuzzyPartition& partition, double confidence, int m) {
    return partition.membership(confidence, m);
}

inline std::vector<double> membership_vector(const FuzzyPartition& partition, double confidence) {
    return partition.membership_vector(confidence);
}

/// Per-bin fuzzy mass, membership-weighted accuracy and confidence.
/// lower_edge/upper_edge report the support of each trapezoid.
std::vector<BinStats> fuzzy_bin_stats(const ValidatedDataset& dataset,
                                      const FuzzyPartition& partition);

/// Fuzzy calibration error: membership-mass weighted mean of per-bin
/// |acc - conf|, normalised by the total fuzzy mass.
double fce(const ValidatedDataset& dataset, const FuzzyPartition& partition);

}  // namespace fuzzycal
