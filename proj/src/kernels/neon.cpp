// NEON (AArch64) variants of the binning kernels; same structure as the
// AVX2 file with two lanes.

#include <arm_neon.h>

#include <array>
#include <limits>

#include "fuzzycal/compensated.hpp"
#include "fuzzycal/kernels.hpp"

namespace fuzzycal::kernels::detail {

namespace {

constexpr std::size_t kLanes = 2;

struct VecSum {
    float64x2_t sum = vdupq_n_f64(0.0);
    float64x2_t comp = vdupq_n_f64(0.0);

    void add(float64x2_t x) {
        const float64x2_t t = vaddq_f64(sum, x);
        const uint64x2_t s_big = vcgeq_f64(vabsq_f64(sum), vabsq_f64(x));
        const float64x2_t big = vbslq_f64(s_big, sum, x);
        const float64x2_t small = vbslq_f64(s_big, x, sum);
        comp = vaddq_f64(comp, vaddq_f64(vsubq_f64(big, t), small));
        sum = t;
    }

    double reduce() const {
        std::array<double, kLanes> s{}, c{};
        vst1q_f64(s.data(), sum);
        vst1q_f64(c.data(), comp);
        CompensatedSum r;
        for (double v : s) r += v;
        for (double v : c) r += v;
        return r.value();
    }
};

struct BinVecSums {
    VecSum mass, hits, confidence;

    void add(float64x2_t w, float64x2_t c, float64x2_t p) {
        mass.add(w);
        hits.add(vmulq_f64(w, c));
        confidence.add(vmulq_f64(w, p));
    }

    void store(BinSums& out, std::size_t k) const {
        out.mass[k] = mass.reduce();
        out.hits[k] = hits.reduce();
        out.confidence[k] = confidence.reduce();
    }
};

template <typename Fn>
void for_each_chunk(std::span<const double> p, std::span<const double> c, Fn&& fn) {
    const std::size_t n = p.size();
    const std::size_t full = n - n % kLanes;
    const uint64x2_t all = vdupq_n_u64(~0ULL);
    for (std::size_t i = 0; i < full; i += kLanes) {
        fn(vld1q_f64(p.data() + i), vld1q_f64(c.data() + i), all);
    }
    if (full == n) return;
    std::array<double, kLanes> pt{}, ct{};
    std::array<std::uint64_t, kLanes> vt{};
    for (std::size_t l = 0; full + l < n; ++l) {
        pt[l] = p[full + l];
        ct[l] = c[full + l];
        vt[l] = ~0ULL;
    }
    fn(vld1q_f64(pt.data()), vld1q_f64(ct.data()), vld1q_u64(vt.data()));
}

float64x2_t weight_from_mask(uint64x2_t mask, float64x2_t value) {
    return vreinterpretq_f64_u64(vandq_u64(mask, vreinterpretq_u64_f64(value)));
}

}  // namespace

void crisp_sums_neon(std::span<const double> confidence, std::span<const double> correct,
                     CrispGeometry geometry, BinSums& out) {
    const auto& edges = geometry.upper_edges;
    const float64x2_t one = vdupq_n_f64(1.0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const float64x2_t lo = vdupq_n_f64(
            k == 0 ? -std::numeric_limits<double>::infinity() : edges[k - 1]);
        const float64x2_t hi = vdupq_n_f64(edges[k]);
        BinVecSums acc;
        for_each_chunk(confidence, correct, [&](float64x2_t p, float64x2_t c, uint64x2_t valid) {
            const uint64x2_t in = vandq_u64(vandq_u64(vcgtq_f64(p, lo), vcleq_f64(p, hi)), valid);
            acc.add(weight_from_mask(in, one), c, p);
        });
        acc.store(out, k);
    }
}

void fuzzy_sums_neon(std::span<const double> confidence, std::span<const double> correct,
                     TrapezoidGeometry geometry, BinSums& out) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t bins = geometry.core_hi.size();
    const float64x2_t one = vdupq_n_f64(1.0);
    for (std::size_t k = 0; k < bins; ++k) {
        const double left = k == 0 ? -inf : geometry.core_hi[k - 1];
        const double right = k + 1 == bins ? inf : geometry.core_lo[k + 1];
        const float64x2_t L = vdupq_n_f64(left);
        const float64x2_t A = vdupq_n_f64(geometry.core_lo[k]);
        const float64x2_t B = vdupq_n_f64(geometry.core_hi[k]);
        const float64x2_t R = vdupq_n_f64(right);
        const float64x2_t rise_width = vdupq_n_f64(k == 0 ? 1.0 : geometry.core_lo[k] - left);
        const float64x2_t fall_width =
            vdupq_n_f64(k + 1 == bins ? 1.0 : right - geometry.core_hi[k]);

        BinVecSums acc;
        for_each_chunk(confidence, correct, [&](float64x2_t p, float64x2_t c, uint64x2_t valid) {
            const uint64x2_t above_left = vcgtq_f64(p, L);
            const uint64x2_t in_core =
                vandq_u64(vandq_u64(vcgeq_f64(p, A), above_left), vcleq_f64(p, B));
            const uint64x2_t in_rise = vandq_u64(above_left, vcltq_f64(p, A));
            const uint64x2_t in_fall = vandq_u64(vcgtq_f64(p, B), vcltq_f64(p, R));
            const float64x2_t rise = vdivq_f64(vsubq_f64(p, L), rise_width);
            const float64x2_t fall = vsubq_f64(one, vdivq_f64(vsubq_f64(p, B), fall_width));

            float64x2_t w = weight_from_mask(in_core, one);
            w = vbslq_f64(in_rise, rise, w);
            w = vbslq_f64(in_fall, fall, w);
            w = weight_from_mask(valid, w);
            acc.add(w, c, p);
        });
        acc.store(out, k);
    }
}

}  // namespace fuzzycal::kernels::detail
