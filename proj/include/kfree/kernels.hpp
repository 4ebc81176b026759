#pragma once

#include <array>
#include <cstdint>

namespace kfree::kernels {

// Highest log power a single pass accumulates (indices 0..10 in one sweep).
inline constexpr int kMaxLogPower = 10;

enum class Variant { scalar, avx2 };

// Partial sums over the masked integers of one range:
//   sums[a] = sum over n with bit set of log(n)^a * n^(-sigma),  a = 0..amax.
// count is the number of set bits seen.
struct PowerSums {
    std::array<double, kMaxLogPower + 1> sums{};
    uint64_t count = 0;
};

// Accumulates over bits [bit_lo, bit_hi) of `words`, where bit i corresponds
// to the integer n0 + i. sigma == 1 uses an exact reciprocal; other sigma go
// through exp(-sigma log n). Interior full words run through the selected
// variant; ragged edges are handled by the scalar reference path.
PowerSums masked_power_sums(const uint64_t* words, uint64_t n0, uint64_t bit_lo,
                            uint64_t bit_hi, double sigma, int amax, Variant v);

// Scalar reference semantics (std::log / std::exp per element).
PowerSums masked_power_sums_scalar(const uint64_t* words, uint64_t n0,
                                   uint64_t bit_lo, uint64_t bit_hi, double sigma,
                                   int amax);

#if defined(KFREE_HAVE_AVX2_BUILD)
// AVX2+FMA variant; requires bit_lo/bit_hi word-aligned (multiples of 64).
PowerSums masked_power_sums_avx2(const uint64_t* words, uint64_t n0,
                                 uint64_t bit_lo, uint64_t bit_hi, double sigma,
                                 int amax);
// Vector transcendentals, exposed for equivalence tests.
void vlog4(const double* in, double* out);
void vexp4(const double* in, double* out);
#endif

bool avx2_available();             // compile-time support and runtime CPU check
Variant preferred_variant();       // detection plus KFREE_SIMD env override
const char* variant_name(Variant v);

// Streaming Neumaier-compensated combiner for per-block partial sums.
// Blocks must be fed in a fixed order for bit-reproducible totals.
struct CompensatedTotals {
    std::array<double, kMaxLogPower + 1> sum{};
    std::array<double, kMaxLogPower + 1> comp{};
    uint64_t count = 0;

    void add(const PowerSums& part, int amax);
    double total(int a) const { return sum[a] + comp[a]; }
};

}  // namespace kfree::kernels
