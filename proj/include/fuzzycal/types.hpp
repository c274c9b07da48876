#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fuzzycal {

/// One sample: top-class confidence, predicted class, true class.
struct PredictionRecord {
    double confidence = 0.0;
    std::int64_t predicted_label = 0;
    std::int64_t true_label = 0;

    bool correct() const noexcept { return predicted_label == true_label; }

    friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

/// Immutable, validated, order-preserving collection of records.
///
/// Besides the records themselves the dataset keeps two structure-of-arrays
/// columns (confidence and a 0/1 correctness indicator) that the binning
/// kernels stream over.
class ValidatedDataset {
public:
    std::span<const PredictionRecord> records() const noexcept { return records_; }
    std::span<const double> confidences() const noexcept { return confidences_; }
    /// 1.0 where predicted_label == true_label, else 0.0.
    std::span<const double> correctness() const noexcept { return correctness_; }

    std::size_t size() const noexcept { return records_.size(); }
    std::int64_t num_classes() const noexcept { return num_classes_; }

    friend bool operator==(const ValidatedDataset& a, const ValidatedDataset& b) {
        return a.num_classes_ == b.num_classes_ && a.records_ == b.records_;
    }

private:
    friend ValidatedDataset validate_records(std::vector<PredictionRecord>,
                                             std::optional<std::int64_t>);

    std::vector<PredictionRecord> records_;
    std::vector<double> confidences_;
    std::vector<double> correctness_;
    std::int64_t num_classes_ = 0;
};

/// Validates raw rows and builds a dataset in ingestion order.
///
/// num_classes defaults to 1 + the largest label seen. A declared value
/// smaller than that is rejected as kInvalidConfig.
///
/// Throws Error(kEmptyInput), RowError(kOutOfRange) for a confidence outside
/// [0, 1] (NaN included), RowError(kNegativeLabel).
ValidatedDataset validate_records(std::vector<PredictionRecord> raw,
                                  std::optional<std::int64_t> num_classes = std::nullopt);

/// Per-bin summary, shared by crisp and fuzzy binning.
///
/// For crisp bins mass is the sample count |B_m|; for fuzzy bins it is the
/// total membership. Empty bins carry no accuracy or confidence.
struct BinStats {
    int bin_index = 0;  // 1-based
    double lower_edge = 0.0;
    double upper_edge = 0.0;
    double mass = 0.0;
    std::optional<double> accuracy;
    std::optional<double> mean_confidence;

    std::optional<double> gap() const {
        if (!accuracy || !mean_confidence) return std::nullopt;
        double d = *accuracy - *mean_confidence;
        return d < 0 ? -d : d;
    }
};

inline constexpr double kDefaultCoreRatio = 0.5;
inline constexpr int kDefaultNumBins = 15;

/// Bin count and fuzziness. Interval convention is fixed: bin m covers
/// ((m-1)/M, m/M], and bin 1 additionally holds confidence 0.
struct BinConfig {
    int num_bins = kDefaultNumBins;
    double core_ratio = kDefaultCoreRatio;

    /// Throws Error(kInvalidConfig) unless num_bins >= 2 and 0 < core_ratio <= 1.
    void validate() const;
};

inline constexpr const char* kIntervalConvention = "((m-1)/M, m/M], 0 in bin 1";

}  // namespace fuzzycal
