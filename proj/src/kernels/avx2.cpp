// AVX2 variants of the binning kernels; callers reach these through the
// dispatcher after a CPU feature check.
//
// The translation unit is compiled for the baseline ISA. Only code after the
// target pragma is allowed AVX2, so inline functions from shared headers
// never get AVX2 bodies that the linker could hand to scalar callers.

#include <immintrin.h>

#include <array>
#include <limits>

#include "fuzzycal/compensated.hpp"
#include "fuzzycal/kernels.hpp"

#if defined(__clang__)
#pragma clang attribute push(__attribute__((target("avx2"))), apply_to = function)
#elif defined(__GNUC__)
#pragma GCC push_options
#pragma GCC target("avx2")
#endif

namespace fuzzycal::kernels::detail {

namespace {

constexpr std::size_t kLanes = 4;

// Lane-wise Neumaier accumulator.
struct VecSum {
    // Explicit constructor: an implicit one would not inherit the target pragma.
    VecSum() : sum(_mm256_setzero_pd()), comp(_mm256_setzero_pd()) {}

    __m256d sum;
    __m256d comp;

    void add(__m256d x) {
        const __m256d sign = _mm256_set1_pd(-0.0);
        const __m256d t = _mm256_add_pd(sum, x);
        const __m256d abs_s = _mm256_andnot_pd(sign, sum);
        const __m256d abs_x = _mm256_andnot_pd(sign, x);
        const __m256d s_big = _mm256_cmp_pd(abs_s, abs_x, _CMP_GE_OQ);
        const __m256d big = _mm256_blendv_pd(x, sum, s_big);
        const __m256d small = _mm256_blendv_pd(sum, x, s_big);
        comp = _mm256_add_pd(comp, _mm256_add_pd(_mm256_sub_pd(big, t), small));
        sum = t;
    }

    // Fixed order: lane sums 0..3, then lane compensations 0..3.
    double reduce() const {
        alignas(32) std::array<double, kLanes> s{}, c{};
        _mm256_store_pd(s.data(), sum);
        _mm256_store_pd(c.data(), comp);
        CompensatedSum r;
        for (double v : s) r += v;
        for (double v : c) r += v;
        return r.value();
    }
};

struct BinVecSums {
    BinVecSums() {}

    VecSum mass, hits, confidence;

    void add(__m256d w, __m256d c, __m256d p) {
        mass.add(w);
        hits.add(_mm256_mul_pd(w, c));
        confidence.add(_mm256_mul_pd(w, p));
    }

    void store(BinSums& out, std::size_t k) const {
        out.mass[k] = mass.reduce();
        out.hits[k] = hits.reduce();
        out.confidence[k] = confidence.reduce();
    }
};

// Visits the input in 4-wide chunks; the final partial chunk is zero padded
// and its padding lanes are excluded through `valid`.
template <typename Fn>
void for_each_chunk(std::span<const double> p, std::span<const double> c, Fn&& fn) {
    const std::size_t n = p.size();
    const std::size_t full = n - n % kLanes;
    const __m256d all = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (std::size_t i = 0; i < full; i += kLanes) {
        fn(_mm256_loadu_pd(p.data() + i), _mm256_loadu_pd(c.data() + i), all);
    }
    if (full == n) return;
    alignas(32) std::array<double, kLanes> pt{}, ct{};
    alignas(32) std::array<long long, kLanes> vt{};
    for (std::size_t l = 0; full + l < n; ++l) {
        pt[l] = p[full + l];
        ct[l] = c[full + l];
        vt[l] = -1;
    }
    fn(_mm256_load_pd(pt.data()), _mm256_load_pd(ct.data()),
       _mm256_castsi256_pd(_mm256_load_si256(reinterpret_cast<const __m256i*>(vt.data()))));
}

}  // namespace

void crisp_sums_avx2(std::span<const double> confidence, std::span<const double> correct,
                     CrispGeometry geometry, BinSums& out) {
    const auto& edges = geometry.upper_edges;
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t k = 0; k < edges.size(); ++k) {
        const __m256d lo = _mm256_set1_pd(k == 0 ? -std::numeric_limits<double>::infinity()
                                                 : edges[k - 1]);
        const __m256d hi = _mm256_set1_pd(edges[k]);
        BinVecSums acc;
        for_each_chunk(confidence, correct, [&](__m256d p, __m256d c, __m256d valid) {
            __m256d in = _mm256_and_pd(_mm256_cmp_pd(p, lo, _CMP_GT_OQ),
                                       _mm256_cmp_pd(p, hi, _CMP_LE_OQ));
            in = _mm256_and_pd(in, valid);
            acc.add(_mm256_and_pd(in, one), c, p);
        });
        acc.store(out, k);
    }
}

void fuzzy_sums_avx2(std::span<const double> confidence, std::span<const double> correct,
                     TrapezoidGeometry geometry, BinSums& out) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t bins = geometry.core_hi.size();
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t k = 0; k < bins; ++k) {
        const double left = k == 0 ? -inf : geometry.core_hi[k - 1];
        const double right = k + 1 == bins ? inf : geometry.core_lo[k + 1];
        const __m256d L = _mm256_set1_pd(left);
        const __m256d A = _mm256_set1_pd(geometry.core_lo[k]);
        const __m256d B = _mm256_set1_pd(geometry.core_hi[k]);
        const __m256d R = _mm256_set1_pd(right);
        const __m256d rise_width = _mm256_set1_pd(k == 0 ? 1.0 : geometry.core_lo[k] - left);
        const __m256d fall_width =
            _mm256_set1_pd(k + 1 == bins ? 1.0 : right - geometry.core_hi[k]);

        BinVecSums acc;
        for_each_chunk(confidence, correct, [&](__m256d p, __m256d c, __m256d valid) {
            const __m256d above_left = _mm256_cmp_pd(p, L, _CMP_GT_OQ);
            const __m256d in_core =
                _mm256_and_pd(_mm256_and_pd(_mm256_cmp_pd(p, A, _CMP_GE_OQ), above_left),
                              _mm256_cmp_pd(p, B, _CMP_LE_OQ));
            const __m256d in_rise = _mm256_and_pd(above_left, _mm256_cmp_pd(p, A, _CMP_LT_OQ));
            const __m256d in_fall = _mm256_and_pd(_mm256_cmp_pd(p, B, _CMP_GT_OQ),
                                                  _mm256_cmp_pd(p, R, _CMP_LT_OQ));
            const __m256d rise = _mm256_div_pd(_mm256_sub_pd(p, L), rise_width);
            const __m256d fall =
                _mm256_sub_pd(one, _mm256_div_pd(_mm256_sub_pd(p, B), fall_width));

            __m256d w = _mm256_and_pd(in_core, one);
            w = _mm256_blendv_pd(w, rise, in_rise);
            w = _mm256_blendv_pd(w, fall, in_fall);
            w = _mm256_and_pd(w, valid);
            acc.add(w, c, p);
        });
        acc.store(out, k);
    }
}

}  // namespace fuzzycal::kernels::detail

#if defined(__clang__)
#pragma clang attribute pop
#elif defined(__GNUC__)
#pragma GCC pop_options
#endif
