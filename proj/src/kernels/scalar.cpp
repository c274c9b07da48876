#include <algorithm>
#include <vector>

#include "fuzzycal/compensated.hpp"
#include "fuzzycal/kernels.hpp"

namespace fuzzycal::kernels::detail {

namespace {

struct BinAccumulators {
    explicit BinAccumulators(std::size_t bins) : mass(bins), hits(bins), confidence(bins) {}

    void add(std::size_t k, double weight, double correct, double p) {
        mass[k] += weight;
        hits[k] += weight * correct;
        confidence[k] += weight * p;
    }

    void store(BinSums& out) const {
        for (std::size_t k = 0; k < mass.size(); ++k) {
            out.mass[k] = mass[k].value();
            out.hits[k] = hits[k].value();
            out.confidence[k] = confidence[k].value();
        }
    }

    std::vector<CompensatedSum> mass, hits, confidence;
};

// First index k with p <= edges[k], clamped to the last bin.
std::size_t first_not_below(std::span<const double> edges, double p) {
    const auto it = std::lower_bound(edges.begin(), edges.end(), p);
    return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - edges.begin(), static_cast<std::ptrdiff_t>(edges.size()) - 1));
}

}  // namespace

void crisp_sums_scalar(std::span<const double> confidence, std::span<const double> correct,
                       CrispGeometry geometry, BinSums& out) {
    BinAccumulators acc(geometry.upper_edges.size());
    for (std::size_t i = 0; i < confidence.size(); ++i) {
        const double p = confidence[i];
        acc.add(first_not_below(geometry.upper_edges, p), 1.0, correct[i], p);
    }
    acc.store(out);
}

void fuzzy_sums_scalar(std::span<const double> confidence, std::span<const double> correct,
                       TrapezoidGeometry geometry, BinSums& out) {
    BinAccumulators acc(geometry.core_hi.size());
    for (std::size_t i = 0; i < confidence.size(); ++i) {
        const double p = confidence[i];
        const double c = correct[i];
        const std::size_t j = first_not_below(geometry.core_hi, p);
        if (j == 0 || p >= geometry.core_lo[j]) {
            acc.add(j, 1.0, c, p);
            continue;
        }
        // Ramp between core j-1 and core j.
        const double lo = geometry.core_hi[j - 1];
        const double t = (p - lo) / (geometry.core_lo[j] - lo);
        acc.add(j - 1, 1.0 - t, c, p);
        acc.add(j, t, c, p);
    }
    acc.store(out);
}

}  // namespace fuzzycal::kernels::detail
