#pragma once

// Per-bin accumulation kernels.
//
// Every kernel streams (confidence, correctness) columns and produces, for
// each bin m, three compensated sums: sum of weights, sum of weight*correct,
// sum of weight*confidence. Weights are 0/1 for crisp bins and membership
// values for fuzzy bins.
//
// The scalar kernels are the reference. SIMD variants (AVX2 on x86-64, NEON
// on AArch64) iterate bin-major with one compensated accumulator per lane
// and must agree with the reference to within 1e-12 relative; they are
// selected at runtime by CPU feature detection, or forced with the
// FUZZYCAL_BACKEND environment variable (scalar|avx2|neon|auto).

#include <span>
#include <string_view>
#include <vector>

namespace fuzzycal::kernels {

enum class Backend { kScalar, kAvx2, kNeon };

std::string_view to_string(Backend backend) noexcept;

struct BinSums {
    explicit BinSums(int num_bins)
        : mass(static_cast<std::size_t>(num_bins), 0.0),
          hits(static_cast<std::size_t>(num_bins), 0.0),
          confidence(static_cast<std::size_t>(num_bins), 0.0) {}

    std::vector<double> mass;
    std::vector<double> hits;
    std::vector<double> confidence;

    int num_bins() const noexcept { return static_cast<int>(mass.size()); }
};

/// Crisp kernel input: upper_edges[k] is the upper edge of bin k+1, so
/// bin k+1 is (upper_edges[k-1], upper_edges[k]] and bin 1 is [0, upper_edges[0]].
struct CrispGeometry {
    std::span<const double> upper_edges;
};

/// Trapezoid kernel input. For bin k (0-based): core [core_lo[k], core_hi[k]],
/// rising ramp on (core_hi[k-1], core_lo[k]) and falling ramp on
/// (core_hi[k], core_lo[k+1]). Outermost bins have no outer ramp.
struct TrapezoidGeometry {
    std::span<const double> core_lo;
    std::span<const double> core_hi;
};

bool backend_available(Backend backend) noexcept;

/// Backend used by the dispatching entry points. Resolved once from the
/// environment override or the best available CPU feature.
Backend active_backend();

/// Overrides dispatch for the rest of the process; throws
/// Error(kInvalidConfig) if the backend is not available on this CPU.
void force_backend(Backend backend);

BinSums crisp_sums(std::span<const double> confidence, std::span<const double> correct,
                   CrispGeometry geometry);
BinSums crisp_sums(Backend backend, std::span<const double> confidence,
                   std::span<const double> correct, CrispGeometry geometry);

BinSums fuzzy_sums(std::span<const double> confidence, std::span<const double> correct,
                   TrapezoidGeometry geometry);
BinSums fuzzy_sums(Backend backend, std::span<const double> confidence,
                   std::span<const double> correct, TrapezoidGeometry geometry);

namespace detail {

void crisp_sums_scalar(std::span<const double> confidence, std::span<const double> correct,
                       CrispGeometry geometry, BinSums& out);
void fuzzy_sums_scalar(std::span<const double> confidence, std::span<const double> correct,
                       TrapezoidGeometry geometry, BinSums& out);

#if defined(FUZZYCAL_HAVE_AVX2)
void crisp_sums_avx2(std::span<const double> confidence, std::span<const double> correct,
                     CrispGeometry geometry, BinSums& out);
void fuzzy_sums_avx2(std::span<const double> confidence, std::span<const double> correct,
                     TrapezoidGeometry geometry, BinSums& out);
#endif

#if defined(FUZZYCAL_HAVE_NEON)
void crisp_sums_neon(std::span<const double> confidence, std::span<const double> correct,
                     CrispGeometry geometry, BinSums& out);
void fuzzy_sums_neon(std::span<const double> confidence, std::span<const double> correct,
                     TrapezoidGeometry geometry, BinSums& out);
#endif

}  // namespace detail

}  // namespace fuzzycal::kernels
