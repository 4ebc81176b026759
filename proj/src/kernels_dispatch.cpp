#include <cmath>
#include <cstdlib>
#include <string>

#include "kfree/errors.hpp"
#include "kfree/kernels.hpp"

namespace kfree::kernels {

bool avx2_available() {
#if defined(KFREE_HAVE_AVX2_BUILD)
    static const bool ok =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Variant preferred_variant() {
    static const Variant v = [] {
        if (const char* env = std::getenv("KFREE_SIMD")) {
            std::string mode(env);
            if (mode == "scalar") return Variant::scalar;
            if (mode == "avx2") return avx2_available() ? Variant::avx2 : Variant::scalar;
        }
        return avx2_available() ? Variant::avx2 : Variant::scalar;
    }();
    return v;
}

const char* variant_name(Variant v) {
    return v == Variant::avx2 ? "avx2" : "scalar";
}

PowerSums masked_power_sums(const uint64_t* words, uint64_t n0, uint64_t bit_lo,
                            uint64_t bit_hi, double sigma, int amax, Variant v) {
    if (amax < 0 || amax > kMaxLogPower)
        throw RangeError("masked_power_sums: amax out of range");
    if (bit_lo > bit_hi) throw RangeError("masked_power_sums: bit_lo > bit_hi");

    // The vector exp path builds 2^j by exponent assembly; keep it away from
    // subnormal scales.
    bool extreme = sigma != 1.0 &&
                   std::fabs(sigma) * std::log(static_cast<double>(n0 + bit_hi) + 1.0) > 690.0;
    if (v == Variant::scalar || extreme || !avx2_available())
        return masked_power_sums_scalar(words, n0, bit_lo, bit_hi, sigma, amax);

#if defined(KFREE_HAVE_AVX2_BUILD)
    uint64_t lo_aligned = (bit_lo + 63) & ~uint64_t(63);
    uint64_t hi_aligned = bit_hi & ~uint64_t(63);
    if (lo_aligned >= hi_aligned)
        return masked_power_sums_scalar(words, n0, bit_lo, bit_hi, sigma, amax);

    CompensatedTotals tot;
    if (bit_lo < lo_aligned)
        tot.add(masked_power_sums_scalar(words, n0, bit_lo, lo_aligned, sigma, amax), amax);
    tot.add(masked_power_sums_avx2(words, n0, lo_aligned, hi_aligned, sigma, amax), amax);
    if (hi_aligned < bit_hi)
        tot.add(masked_power_sums_scalar(words, n0, hi_aligned, bit_hi, sigma, amax), amax);

    PowerSums out;
    out.count = tot.count;
    for (int a = 0; a <= amax; ++a) out.sums[a] = tot.total(a);
    return out;
#else
    return masked_power_sums_scalar(words, n0, bit_lo, bit_hi, sigma, amax);
#endif
}

}  // namespace kfree::kernels
