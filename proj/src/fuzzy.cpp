#include "fuzzycal/fuzzy.hpp"

#include <algorithm>

#include "fuzzycal/compensated.hpp"
#include "fuzzycal/crisp.hpp"
#include "fuzzycal/error.hpp"
#include "fuzzycal/kernels.hpp"

namespace fuzzycal {

FuzzyPartition::FuzzyPartition(int num_bins, double core_ratio)
    : num_bins_(num_bins), core_ratio_(core_ratio) {
    BinConfig{num_bins, core_ratio}.validate();

    // Written as (m - 0.5 -/+ r/2)/M rather than c_m -/+ w/2 so that r = 1
    // reproduces crisp_upper_edge() exactly: m - 0.5 + 0.5 == m in binary.
    const double half = 0.5 * core_ratio;
    const double M = static_cast<double>(num_bins);
    core_lo_.resize(static_cast<std::size_t>(num_bins));
    core_hi_.resize(static_cast<std::size_t>(num_bins));
    for (int m = 1; m <= num_bins; ++m) {
        core_lo_[idx(m)] = (static_cast<double>(m) - 0.5 - half) / M;
        core_hi_[idx(m)] = (static_cast<double>(m) - 0.5 + half) / M;
    }
    core_lo_.front() = 0.0;
    core_hi_.back() = 1.0;
}

double FuzzyPartition::center(int m) const noexcept {
    return (static_cast<double>(m) - 0.5) / static_cast<double>(num_bins_);
}

double FuzzyPartition::membership(double p, int m) const noexcept {
    const double lo = support_lo(m);
    const double a = core_lo(m);
    const double b = core_hi(m);
    const double hi = support_hi(m);

    if (p >= a && p <= b) {
        // With r = 1, a == lo and an internal edge point belongs to bin m - 1.
        return (m > 1 && p <= lo) ? 0.0 : 1.0;
    }
    if (m > 1 && p > lo && p < a) return (p - lo) / (a - lo);
    // Falling ramp written as the complement of the next bin's rising ramp.
    if (m < num_bins_ && p > b && p < hi) return 1.0 - (p - b) / (hi - b);
    return 0.0;
}

std::vector<double> FuzzyPartition::membership_vector(double p) const {
    std::vector<double> mu(static_cast<std::size_t>(num_bins_), 0.0);
    // j is the first bin whose core ends at or after p.
    const auto it = std::lower_bound(core_hi_.begin(), core_hi_.end(), p);
    const auto j = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - core_hi_.begin(), num_bins_ - 1));
    if (j == 0 || p >= core_lo_[j]) {
        mu[j] = 1.0;
    } else {
        const double lo = core_hi_[j - 1];
        const double t = (p - lo) / (core_lo_[j] - lo);
        mu[j] = t;
        mu[j - 1] = 1.0 - t;
    }
    return mu;
}

FuzzyPartition build_partition(int num_bins, double core_ratio) {
    return FuzzyPartition(num_bins, core_ratio);
}

std::vector<BinStats> fuzzy_bin_stats(const ValidatedDataset& dataset,
                                      const FuzzyPartition& partition) {
    const auto sums = kernels::fuzzy_sums(
        dataset.confidences(), dataset.correctness(),
        kernels::TrapezoidGeometry{partition.core_lo_edges(), partition.core_hi_edges()});

    const int M = partition.num_bins();
    std::vector<BinStats> bins(static_cast<std::size_t>(M));
    for (int m = 1; m <= M; ++m) {
        auto& b = bins[m - 1];
        const auto k = static_cast<std::size_t>(m - 1);
        b.bin_index = m;
        b.lower_edge = partition.support_lo(m);
        b.upper_edge = partition.support_hi(m);
        b.mass = sums.mass[k];
        if (b.mass > 0.0) {
            b.accuracy = std::clamp(sums.hits[k] / b.mass, 0.0, 1.0);
            b.mean_confidence = std::clamp(sums.confidence[k] / b.mass, 0.0, 1.0);
        }
    }
    return bins;
}

double fce(const ValidatedDataset& dataset, const FuzzyPartition& partition) {
    const auto bins = fuzzy_bin_stats(dataset, partition);
    // Normalise by the literal total membership; equals n for this family.
    CompensatedSum total_mass;
    for (const auto& b : bins) total_mass += b.mass;
    return weighted_gap(bins, total_mass.value());
}

}  // namespace fuzzycal
