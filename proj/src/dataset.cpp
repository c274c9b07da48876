#include <algorithm>
#include <cmath>
#include <string>

#include "fuzzycal/error.hpp"
#include "fuzzycal/io.hpp"
#include "fuzzycal/types.hpp"

namespace fuzzycal {

ValidatedDataset validate_records(std::vector<PredictionRecord> raw,
                                  std::optional<std::int64_t> num_classes) {
    if (raw.empty()) throw Error(ErrorCode::kEmptyInput, "no records");

    std::int64_t max_label = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const auto& r = raw[i];
        // Negated comparison so that NaN is rejected too.
        if (!(r.confidence >= 0.0 && r.confidence <= 1.0)) {
            throw RowError(ErrorCode::kOutOfRange, i,
                           "confidence " + format_shortest(r.confidence) + " outside [0, 1]");
        }
        if (r.predicted_label < 0 || r.true_label < 0) {
            throw RowError(ErrorCode::kNegativeLabel, i, "labels must be non-negative");
        }
        max_label = std::max({max_label, r.predicted_label, r.true_label});
    }
    if (num_classes && *num_classes < max_label + 1) {
        throw Error(ErrorCode::kInvalidConfig,
                    "declared num_classes " + std::to_string(*num_classes) +
                        " is smaller than 1 + max label (" + std::to_string(max_label + 1) +
                        ")");
    }

    ValidatedDataset ds;
    ds.num_classes_ = num_classes.value_or(max_label + 1);
    ds.confidences_.reserve(raw.size());
    ds.correctness_.reserve(raw.size());
    for (const auto& r : raw) {
        ds.confidences_.push_back(r.confidence);
        ds.correctness_.push_back(r.correct() ? 1.0 : 0.0);
    }
    ds.records_ = std::move(raw);
    return ds;
}

void BinConfig::validate() const {
    if (num_bins < 2) {
        throw Error(ErrorCode::kInvalidConfig,
                    "num_bins must be >= 2, got " + std::to_string(num_bins));
    }
    if (!(core_ratio > 0.0 && core_ratio <= 1.0)) {
        throw Error(ErrorCode::kInvalidConfig,
                    "core_ratio must be in (0, 1], got " + format_shortest(core_ratio));
    }
}

}  // namespace fuzzycal
