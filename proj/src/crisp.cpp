#include "fuzzycal/crisp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzycal/compensated.hpp"
#include "fuzzycal/error.hpp"
#include "fuzzycal/kernels.hpp"

namespace fuzzycal {

namespace {

void require_bins(int num_bins) {
    if (num_bins < 2) {
        throw Error(ErrorCode::kInvalidConfig,
                    "num_bins must be >= 2, got " + std::to_string(num_bins));
    }
}

std::vector<double> upper_edges(int num_bins) {
    std::vector<double> edges(static_cast<std::size_t>(num_bins));
    for (int m = 1; m <= num_bins; ++m) edges[m - 1] = crisp_upper_edge(m, num_bins);
    return edges;
}

}  // namespace

int crisp_bin_index(double confidence, int num_bins) noexcept {
    // ceil(p*M) is a first guess; the edge comparisons settle rounding so the
    // result agrees with the kernels, which compare against m/M directly.
    int m = static_cast<int>(std::ceil(confidence * num_bins));
    m = std::clamp(m, 1, num_bins);
    while (m > 1 && confidence <= crisp_upper_edge(m - 1, num_bins)) --m;
    while (m < num_bins && confidence > crisp_upper_edge(m, num_bins)) ++m;
    return m;
}

std::vector<BinStats> crisp_bin_stats(const ValidatedDataset& dataset, int num_bins) {
    require_bins(num_bins);
    const auto edges = upper_edges(num_bins);
    const auto sums = kernels::crisp_sums(dataset.confidences(), dataset.correctness(),
                                          kernels::CrispGeometry{edges});

    std::vector<BinStats> bins(static_cast<std::size_t>(num_bins));
    for (int m = 1; m <= num_bins; ++m) {
        auto& b = bins[m - 1];
        const auto k = static_cast<std::size_t>(m - 1);
        b.bin_index = m;
        b.lower_edge = m == 1 ? 0.0 : edges[k - 1];
        b.upper_edge = edges[k];
        b.mass = sums.mass[k];
        if (b.mass > 0.0) {
            b.accuracy = std::clamp(sums.hits[k] / b.mass, 0.0, 1.0);
            b.mean_confidence = std::clamp(sums.confidence[k] / b.mass, 0.0, 1.0);
        }
    }
    return bins;
}

double weighted_gap(const std::vector<BinStats>& bins, double normalizer) {
    CompensatedSum total;
    for (const auto& b : bins) {
        if (auto g = b.gap()) total += b.mass * *g;
    }
    return normalizer > 0.0 ? total.value() / normalizer : 0.0;
}

double ece(const ValidatedDataset& dataset, int num_bins) {
    const auto bins = crisp_bin_stats(dataset, num_bins);
    return weighted_gap(bins, static_cast<double>(dataset.size()));
}

std::optional<double> overconfidence(const ValidatedDataset& dataset) {
    CompensatedSum sum;
    std::size_t incorrect = 0;
    for (const auto& r : dataset.records()) {
        if (!r.correct()) {
            sum += r.confidence;
            ++incorrect;
        }
    }
    if (incorrect == 0) return std::nullopt;
    return sum.value() / static_cast<double>(incorrect);
}

double accuracy(const ValidatedDataset& dataset) {
    std::size_t hits = 0;
    for (const auto& r : dataset.records()) hits += r.correct() ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

}  // namespace fuzzycal
