#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "fuzzycal/types.hpp"

namespace fuzzycal {

/// Beta(alpha, beta) shape of the raw confidence draw.
struct SkewShape {
    double alpha = 8.0;
    double beta = 1.5;

    static constexpr SkewShape low() { return {2.0, 2.0}; }
    static constexpr SkewShape high() { return {8.0, 1.5}; }

    friend bool operator==(const SkewShape&, const SkewShape&) = default;
};

/// Accepts "low", "high" or "A,B". Throws Error(kInvalidConfig).
SkewShape parse_skew(std::string_view text);

struct GeneratorConfig {
    std::size_t n = 1000;
    int num_classes = 2;
    SkewShape skew = SkewShape::high();
    /// Stated confidence minus true probability of being correct.
    double overconfidence_gap = 0.0;
    std::uint64_t seed = 0;

    /// Throws Error(kInvalidConfig).
    void validate() const;
};

/// Named (K, skew) pairs standing in for corpora of different class counts.
struct DatasetPreset {
    std::string_view name;
    int num_classes;
    SkewShape skew;
};

inline constexpr DatasetPreset kDatasetPresets[] = {
    {"20ng", 20, SkewShape::low()},
    {"agnews", 4, SkewShape::high()},
    {"imdb", 2, SkewShape::high()},
};

std::optional<DatasetPreset> find_preset(std::string_view name) noexcept;

inline constexpr std::string_view kGeneratorAlgorithm =
    "mt19937_64; u01=(x>>11)*2^-53; normal=Marsaglia polar (first variate); "
    "gamma=Marsaglia-Tsang(alpha<1 boosted); beta=X/(X+Y); "
    "label=rejection-sampled uniform";

/// Seedable source whose output depends only on the seed: std::mt19937_64
/// is fully specified by the standard, and every transform on top of it is
/// implemented here rather than through the implementation-defined
/// <random> distributions.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform01();
    /// Uniform integer in [0, bound); bound >= 1.
    std::uint64_t below(std::uint64_t bound);
    double standard_normal();
    double gamma(double shape);
    double beta(double alpha, double beta);

private:
    std::mt19937_64 engine_;
};

/// Draws n records: confidence 1/K + (1 - 1/K) * Beta(alpha, beta), predicted
/// label uniform over K, true label equal to it with probability
/// max(0, confidence - gap) and otherwise a uniformly chosen different label.
ValidatedDataset generate(const GeneratorConfig& config);

}  // namespace fuzzycal
