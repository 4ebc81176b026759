// AVX2+FMA variant of the masked power-sum kernel. Compiled with -mavx2
// -mfma and selected at runtime; the scalar kernel is the reference.
#include <immintrin.h>

#include <bit>
#include <cstdint>

#include "kfree/kernels.hpp"

namespace kfree::kernels {

namespace {

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFLL));

// ln(x) for positive normal doubles: split x = 2^e m with m in
// [sqrt(1/2), sqrt(2)), then ln m = 2 atanh(u) with u = (m-1)/(m+1) and a
// Taylor series in u^2 (|u| <= 0.1716, 12 terms reach ~1e-18 relative).
inline __m256d vlog_pd(__m256d x) {
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
    __m256i bits = _mm256_castpd_si256(x);
    __m256i exp_raw = _mm256_srli_epi64(bits, 52);
    __m256d m =
        _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
    // Biased exponents are < 2^11; move the low 32 bits of each lane together
    // and convert to double.
    __m256i perm = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    __m128i e32 = _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(exp_raw, perm));
    __m256d e = _mm256_sub_pd(_mm256_cvtepi32_pd(e32), _mm256_set1_pd(1023.0));

    const __m256d sqrt2 = _mm256_set1_pd(1.4142135623730951);
    __m256d gt = _mm256_cmp_pd(m, sqrt2, _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), gt);
    e = _mm256_add_pd(e, _mm256_and_pd(gt, _mm256_set1_pd(1.0)));

    const __m256d one = _mm256_set1_pd(1.0);
    __m256d u = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    __m256d u2 = _mm256_mul_pd(u, u);

    __m256d p = _mm256_set1_pd(1.0 / 23.0);
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 21.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 19.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 17.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 15.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 13.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 11.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 9.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 7.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 5.0));
    p = _mm256_fmadd_pd(p, u2, _mm256_set1_pd(1.0 / 3.0));
    p = _mm256_fmadd_pd(p, u2, one);
    __m256d t = _mm256_mul_pd(_mm256_add_pd(u, u), p);  // ln m

    // ln2 split with 20 trailing zero bits in the high part, so e*ln2_hi is
    // exact for |e| < 2^20.
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    __m256d r = _mm256_fmadd_pd(e, ln2_hi, t);
    return _mm256_fmadd_pd(e, ln2_lo, r);
}

// exp(x) for |x| <= ~690: x = j ln2 + r, exp(r) by a 13-term Taylor series on
// |r| <= ln2/2, scaled by 2^j through exponent-field construction.
inline __m256d vexp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    __m256d jd = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                 _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);
    __m256d r = _mm256_fnmadd_pd(jd, ln2_hi, x);
    r = _mm256_fnmadd_pd(jd, ln2_lo, r);

    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    __m128i j32 = _mm256_cvtpd_epi32(jd);
    __m256i j64 = _mm256_cvtepi32_epi64(j32);
    __m256i sc = _mm256_slli_epi64(_mm256_add_epi64(j64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(p, _mm256_castsi256_pd(sc));
}

inline void vneumaier(__m256d& s, __m256d& c, __m256d v) {
    __m256d t = _mm256_add_pd(s, v);
    __m256d abs_s = _mm256_and_pd(s, kAbsMask);
    __m256d abs_v = _mm256_and_pd(v, kAbsMask);
    __m256d s_small = _mm256_cmp_pd(abs_s, abs_v, _CMP_LT_OQ);
    __m256d big = _mm256_blendv_pd(s, v, s_small);
    __m256d small = _mm256_blendv_pd(v, s, s_small);
    c = _mm256_add_pd(c, _mm256_add_pd(_mm256_sub_pd(big, t), small));
    s = t;
}

alignas(32) constexpr uint64_t kNibbleMask[16][4] = {
    {0, 0, 0, 0},       {~0ull, 0, 0, 0},       {0, ~0ull, 0, 0},       {~0ull, ~0ull, 0, 0},
    {0, 0, ~0ull, 0},   {~0ull, 0, ~0ull, 0},   {0, ~0ull, ~0ull, 0},   {~0ull, ~0ull, ~0ull, 0},
    {0, 0, 0, ~0ull},   {~0ull, 0, 0, ~0ull},   {0, ~0ull, 0, ~0ull},   {~0ull, ~0ull, 0, ~0ull},
    {0, 0, ~0ull, ~0ull}, {~0ull, 0, ~0ull, ~0ull}, {0, ~0ull, ~0ull, ~0ull},
    {~0ull, ~0ull, ~0ull, ~0ull}};

}  // namespace

void vlog4(const double* in, double* out) {
    _mm256_storeu_pd(out, vlog_pd(_mm256_loadu_pd(in)));
}

void vexp4(const double* in, double* out) {
    _mm256_storeu_pd(out, vexp_pd(_mm256_loadu_pd(in)));
}

PowerSums masked_power_sums_avx2(const uint64_t* words, uint64_t n0,
                                 uint64_t bit_lo, uint64_t bit_hi, double sigma,
                                 int amax) {
    __m256d s[kMaxLogPower + 1];
    __m256d c[kMaxLogPower + 1];
    for (int a = 0; a <= amax; ++a) s[a] = c[a] = _mm256_setzero_pd();
    const bool reciprocal = (sigma == 1.0);
    const __m256d neg_sigma = _mm256_set1_pd(-sigma);
    const __m256d ones = _mm256_set1_pd(1.0);
    const __m256d four = _mm256_set1_pd(4.0);
    uint64_t count = 0;

    for (uint64_t w = bit_lo >> 6; w < (bit_hi >> 6); ++w) {
        uint64_t word = words[w];
        if (!word) continue;
        double base = static_cast<double>(n0 + (w << 6));
        __m256d vn = _mm256_add_pd(_mm256_set1_pd(base), _mm256_setr_pd(0, 1, 2, 3));
        for (int nib = 0; nib < 16; ++nib) {
            unsigned m = static_cast<unsigned>((word >> (4 * nib)) & 0xF);
            if (m) {
                __m256d mask =
                    _mm256_load_pd(reinterpret_cast<const double*>(kNibbleMask[m]));
                __m256d ln = vlog_pd(vn);
                __m256d p = reciprocal ? _mm256_div_pd(ones, vn)
                                       : vexp_pd(_mm256_mul_pd(ln, neg_sigma));
                p = _mm256_and_pd(p, mask);
                count += std::popcount(m);
                vneumaier(s[0], c[0], p);
                __m256d t = p;
                for (int a = 1; a <= amax; ++a) {
                    t = _mm256_mul_pd(t, ln);
                    vneumaier(s[a], c[a], t);
                }
            }
            vn = _mm256_add_pd(vn, four);
        }
    }

    PowerSums out;
    out.count = count;
    alignas(32) double lane_s[4], lane_c[4];
    for (int a = 0; a <= amax; ++a) {
        _mm256_store_pd(lane_s, s[a]);
        _mm256_store_pd(lane_c, c[a]);
        // Merge lanes in index order so results do not depend on anything
        // but the input range.
        double total = 0;
        for (int l = 0; l < 4; ++l) total += lane_s[l] + lane_c[l];
        out.sums[a] = total;
    }
    return out;
}

}  // namespace kfree::kernels
