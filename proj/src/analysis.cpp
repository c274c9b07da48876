#include "fuzzycal/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "fuzzycal/compensated.hpp"
#include "fuzzycal/crisp.hpp"
#include "fuzzycal/error.hpp"
#include "fuzzycal/fuzzy.hpp"

namespace fuzzycal {

std::string_view to_string(Metric metric) noexcept {
    return metric == Metric::kEce ? "ECE" : "FCE";
}

std::string_view to_string(BinningMode mode) noexcept {
    return mode == BinningMode::kCrisp ? "crisp" : "fuzzy";
}

namespace {

bool parse_int(std::string_view text, int& value) {
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

void check_range(const BinRange& r, const char* what) {
    if (r.lo > r.hi) {
        throw Error(ErrorCode::kInvalidRange,
                    std::string(what) + " " + to_string(r) + " is empty (LO > HI)");
    }
}

double range_mean(std::span<const SweepEntry> entries, BinRange range) {
    CompensatedSum sum;
    for (int m = range.lo; m <= range.hi; ++m) {
        const auto it = std::find_if(entries.begin(), entries.end(),
                                     [m](const SweepEntry& e) { return e.num_bins == m; });
        sum += it->value;
    }
    return sum.value() / static_cast<double>(range.hi - range.lo + 1);
}

bool covers(std::span<const SweepEntry> entries, BinRange range) {
    for (int m = range.lo; m <= range.hi; ++m) {
        if (std::none_of(entries.begin(), entries.end(),
                         [m](const SweepEntry& e) { return e.num_bins == m; })) {
            return false;
        }
    }
    return true;
}

}  // namespace

BinRange parse_bin_range(std::string_view text) {
    const auto sep = text.find("..");
    BinRange r;
    bool ok = false;
    if (sep == std::string_view::npos) {
        ok = parse_int(text, r.lo);
        r.hi = r.lo;
    } else {
        ok = parse_int(text.substr(0, sep), r.lo) && parse_int(text.substr(sep + 2), r.hi);
    }
    if (!ok) {
        throw Error(ErrorCode::kInvalidRange,
                    "expected LO..HI, got '" + std::string(text) + "'");
    }
    check_range(r, "range");
    return r;
}

std::string to_string(const BinRange& range) {
    return std::to_string(range.lo) + ".." + std::to_string(range.hi);
}

double delta(std::span<const SweepEntry> entries, BinRange low, BinRange high,
             DeltaMethod method) {
    check_range(low, "low range");
    check_range(high, "high range");
    if (low.overlaps(high)) {
        throw Error(ErrorCode::kInvalidRange,
                    "delta ranges " + to_string(low) + " and " + to_string(high) + " overlap");
    }
    for (const auto& r : {low, high}) {
        if (!covers(entries, r)) {
            throw Error(ErrorCode::kRangeNotCovered,
                        "sweep has no entries for every M in " + to_string(r));
        }
    }

    if (method == DeltaMethod::kMeanDifference) {
        return std::fabs(range_mean(entries, low) - range_mean(entries, high));
    }

    // Pairwise: iterate by M so the result does not depend on entry order.
    auto value_at = [&](int m) {
        return std::find_if(entries.begin(), entries.end(),
                            [m](const SweepEntry& e) { return e.num_bins == m; })
            ->value;
    };
    CompensatedSum sum;
    for (int i = low.lo; i <= low.hi; ++i) {
        for (int j = high.lo; j <= high.hi; ++j) sum += std::fabs(value_at(i) - value_at(j));
    }
    const double pairs =
        static_cast<double>(low.hi - low.lo + 1) * static_cast<double>(high.hi - high.lo + 1);
    return sum.value() / pairs;
}

SweepResult sweep(const ValidatedDataset& dataset, Metric metric, BinRange range,
                  const SweepOptions& options) {
    check_range(range, "sweep range");
    if (range.lo < kSweepLimits.lo || range.hi > kSweepLimits.hi) {
        throw Error(ErrorCode::kInvalidRange, "sweep range " + to_string(range) +
                                                  " outside " + to_string(kSweepLimits));
    }

    SweepResult result;
    result.metric = metric;
    result.delta_low = options.delta_low;
    result.delta_high = options.delta_high;
    result.delta_method = options.delta_method;
    if (metric == Metric::kFce) {
        BinConfig{range.lo, options.core_ratio}.validate();
        result.core_ratio = options.core_ratio;
    }

    result.entries.reserve(static_cast<std::size_t>(range.hi - range.lo + 1));
    for (int m = range.lo; m <= range.hi; ++m) {
        const double v = metric == Metric::kEce
                             ? ece(dataset, m)
                             : fce(dataset, FuzzyPartition(m, options.core_ratio));
        result.entries.push_back({m, v});
    }

    const bool covered = range.contains(options.delta_low.lo) &&
                         range.contains(options.delta_low.hi) &&
                         range.contains(options.delta_high.lo) &&
                         range.contains(options.delta_high.hi);
    if (covered || options.require_delta) {
        result.delta = delta(result.entries, options.delta_low, options.delta_high,
                             options.delta_method);
    }
    return result;
}

int nonzero_mass_bins(const std::vector<BinStats>& bins) noexcept {
    return static_cast<int>(
        std::count_if(bins.begin(), bins.end(), [](const BinStats& b) { return b.mass > 0.0; }));
}

ReliabilityTable reliability_from_bins(const std::vector<BinStats>& bins, std::size_t n,
                                       BinningMode mode, std::optional<double> core_ratio) {
    ReliabilityTable table;
    table.mode = mode;
    table.num_bins = static_cast<int>(bins.size());
    table.core_ratio = core_ratio;
    table.rows.reserve(bins.size());
    for (const auto& b : bins) {
        ReliabilityRow row;
        row.bin_index = b.bin_index;
        row.lower_edge = b.lower_edge;
        row.upper_edge = b.upper_edge;
        row.mass = b.mass;
        row.mass_fraction = b.mass / static_cast<double>(n);
        row.accuracy = b.accuracy;
        row.mean_confidence = b.mean_confidence;
        row.gap = b.gap();
        table.rows.push_back(row);
    }
    return table;
}

ReliabilityTable reliability_data(const ValidatedDataset& dataset, int num_bins,
                                  BinningMode mode, double core_ratio) {
    if (mode == BinningMode::kCrisp) {
        return reliability_from_bins(crisp_bin_stats(dataset, num_bins), dataset.size(), mode,
                                     std::nullopt);
    }
    return reliability_from_bins(fuzzy_bin_stats(dataset, FuzzyPartition(num_bins, core_ratio)),
                                 dataset.size(), mode, core_ratio);
}

}  // namespace fuzzycal
