#include "fuzzycal/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "fuzzycal/error.hpp"
#include "fuzzycal/io.hpp"

namespace fuzzycal {

namespace {

bool parse_double(std::string_view text, double& value) {
    if (text.empty()) return false;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    return ec == std::errc{} && ptr == end;
}

}  // namespace

SkewShape parse_skew(std::string_view text) {
    if (text == "low") return SkewShape::low();
    if (text == "high") return SkewShape::high();
    const auto comma = text.find(',');
    SkewShape s;
    if (comma == std::string_view::npos || !parse_double(text.substr(0, comma), s.alpha) ||
        !parse_double(text.substr(comma + 1), s.beta)) {
        throw Error(ErrorCode::kInvalidConfig,
                    "skew must be low, high or A,B; got '" + std::string(text) + "'");
    }
    if (!(s.alpha > 0.0 && s.beta > 0.0 && std::isfinite(s.alpha) && std::isfinite(s.beta))) {
        throw Error(ErrorCode::kInvalidConfig, "skew shape parameters must be positive");
    }
    return s;
}

void GeneratorConfig::validate() const {
    if (n < 1) throw Error(ErrorCode::kInvalidConfig, "n must be >= 1");
    if (num_classes < 2) {
        throw Error(ErrorCode::kInvalidConfig,
                    "classes must be >= 2, got " + std::to_string(num_classes));
    }
    if (!(skew.alpha > 0.0 && skew.beta > 0.0 && std::isfinite(skew.alpha) &&
          std::isfinite(skew.beta))) {
        throw Error(ErrorCode::kInvalidConfig, "skew shape parameters must be positive");
    }
    if (!(overconfidence_gap >= 0.0 && overconfidence_gap < 1.0)) {
        throw Error(ErrorCode::kInvalidConfig,
                    "gap must be in [0, 1), got " + format_shortest(overconfidence_gap));
    }
}

std::optional<DatasetPreset> find_preset(std::string_view name) noexcept {
    for (const auto& p : kDatasetPresets) {
        if (p.name == name) return p;
    }
    return std::nullopt;
}

double PortableRng::uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t PortableRng::below(std::uint64_t bound) {
    // Reject the low (2^64 mod bound) values so every residue is equally likely.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) return x % bound;
    }
}

double PortableRng::standard_normal() {
    // Marsaglia polar method; the second variate is discarded so that each
    // call consumes a whole number of engine outputs with no hidden state.
    for (;;) {
        const double u = 2.0 * uniform01() - 1.0;
        const double v = 2.0 * uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

double PortableRng::gamma(double shape) {
    if (shape < 1.0) {
        // Gamma(a) = Gamma(a + 1) * U^(1/a).
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform01(), 1.0 / shape);
    }
    // Marsaglia & Tsang squeeze method.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = standard_normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = uniform01();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double PortableRng::beta(double alpha, double beta) {
    const double x = gamma(alpha);
    const double y = gamma(beta);
    const double s = x + y;
    return s > 0.0 ? x / s : 0.5;
}

ValidatedDataset generate(const GeneratorConfig& config) {
    config.validate();
    PortableRng rng(config.seed);
    const auto K = static_cast<std::uint64_t>(config.num_classes);
    const double floor = 1.0 / static_cast<double>(config.num_classes);

    std::vector<PredictionRecord> records;
    records.reserve(config.n);
    // Draw order per record is fixed: beta, predicted label, correctness
    // uniform, then (only if incorrect) the wrong label.
    for (std::size_t i = 0; i < config.n; ++i) {
        const double x = rng.beta(config.skew.alpha, config.skew.beta);
        const double p = std::clamp(floor + (1.0 - floor) * x, floor, 1.0);
        const auto predicted = static_cast<std::int64_t>(rng.below(K));
        const double p_correct = std::max(0.0, p - config.overconfidence_gap);
        std::int64_t truth = predicted;
        if (!(rng.uniform01() < p_correct)) {
            const auto other = static_cast<std::int64_t>(rng.below(K - 1));
            truth = other >= predicted ? other + 1 : other;
        }
        records.push_back({p, predicted, truth});
    }
    return validate_records(std::move(records), config.num_classes);
}

}  // namespace fuzzycal
