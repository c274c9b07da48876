#include <atomic>
#include <cstdlib>
#include <string>

#include "fuzzycal/error.hpp"
#include "fuzzycal/kernels.hpp"

namespace fuzzycal::kernels {

namespace {

Backend best_available() noexcept {
    if (backend_available(Backend::kAvx2)) return Backend::kAvx2;
    if (backend_available(Backend::kNeon)) return Backend::kNeon;
    return Backend::kScalar;
}

Backend from_environment() {
    const char* env = std::getenv("FUZZYCAL_BACKEND");
    if (env == nullptr) return best_available();
    const std::string name(env);
    if (name == "scalar") return Backend::kScalar;
    if (name == "avx2" && backend_available(Backend::kAvx2)) return Backend::kAvx2;
    if (name == "neon" && backend_available(Backend::kNeon)) return Backend::kNeon;
    // "auto", unknown names and unavailable requests fall back to detection.
    return best_available();
}

std::atomic<int> g_backend{-1};

void require_available(Backend backend) {
    if (!backend_available(backend)) {
        throw Error(ErrorCode::kInvalidConfig,
                    "backend " + std::string(to_string(backend)) + " is not available");
    }
}

}  // namespace

std::string_view to_string(Backend backend) noexcept {
    switch (backend) {
        case Backend::kScalar: return "scalar";
        case Backend::kAvx2: return "avx2";
        case Backend::kNeon: return "neon";
    }
    return "unknown";
}

bool backend_available(Backend backend) noexcept {
    switch (backend) {
        case Backend::kScalar: return true;
        case Backend::kAvx2:
#if defined(FUZZYCAL_HAVE_AVX2)
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::kNeon:
#if defined(FUZZYCAL_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

Backend active_backend() {
    int current = g_backend.load(std::memory_order_acquire);
    if (current < 0) {
        int resolved = static_cast<int>(from_environment());
        g_backend.compare_exchange_strong(current, resolved, std::memory_order_acq_rel);
        current = g_backend.load(std::memory_order_acquire);
    }
    return static_cast<Backend>(current);
}

void force_backend(Backend backend) {
    require_available(backend);
    g_backend.store(static_cast<int>(backend), std::memory_order_release);
}

BinSums crisp_sums(std::span<const double> confidence, std::span<const double> correct,
                   CrispGeometry geometry) {
    return crisp_sums(active_backend(), confidence, correct, geometry);
}

BinSums crisp_sums(Backend backend, std::span<const double> confidence,
                   std::span<const double> correct, CrispGeometry geometry) {
    require_available(backend);
    BinSums out(static_cast<int>(geometry.upper_edges.size()));
    switch (backend) {
#if defined(FUZZYCAL_HAVE_AVX2)
        case Backend::kAvx2: detail::crisp_sums_avx2(confidence, correct, geometry, out); break;
#endif
#if defined(FUZZYCAL_HAVE_NEON)
        case Backend::kNeon: detail::crisp_sums_neon(confidence, correct, geometry, out); break;
#endif
        default: detail::crisp_sums_scalar(confidence, correct, geometry, out); break;
    }
    return out;
}

BinSums fuzzy_sums(std::span<const double> confidence, std::span<const double> correct,
                   TrapezoidGeometry geometry) {
    return fuzzy_sums(active_backend(), confidence, correct, geometry);
}

BinSums fuzzy_sums(Backend backend, std::span<const double> confidence,
                   std::span<const double> correct, TrapezoidGeometry geometry) {
    require_available(backend);
    BinSums out(static_cast<int>(geometry.core_hi.size()));
    switch (backend) {
#if defined(FUZZYCAL_HAVE_AVX2)
        case Backend::kAvx2: detail::fuzzy_sums_avx2(confidence, correct, geometry, out); break;
#endif
#if defined(FUZZYCAL_HAVE_NEON)
        case Backend::kNeon: detail::fuzzy_sums_neon(confidence, correct, geometry, out); break;
#endif
        default: detail::fuzzy_sums_scalar(confidence, correct, geometry, out); break;
    }
    return out;
}

}  // namespace fuzzycal::kernels
