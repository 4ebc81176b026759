#include <bit>
#include <cmath>

#include "kfree/kernels.hpp"

namespace kfree::kernels {

namespace {

inline void neumaier_add(double& s, double& c, double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v))
        c += (s - t) + v;
    else
        c += (v - t) + s;
    s = t;
}

}  // namespace

PowerSums masked_power_sums_scalar(const uint64_t* words, uint64_t n0,
                                   uint64_t bit_lo, uint64_t bit_hi, double sigma,
                                   int amax) {
    double s[kMaxLogPower + 1] = {};
    double c[kMaxLogPower + 1] = {};
    uint64_t count = 0;
    const bool reciprocal = (sigma == 1.0);

    uint64_t w_first = bit_lo >> 6;
    uint64_t w_last = (bit_hi + 63) >> 6;
    for (uint64_t w = w_first; w < w_last; ++w) {
        uint64_t word = words[w];
        uint64_t base = w << 6;
        if (base < bit_lo) word &= ~uint64_t(0) << (bit_lo - base);
        if (base + 64 > bit_hi) {
            uint64_t keep = bit_hi - base;
            word &= keep >= 64 ? ~uint64_t(0) : ((uint64_t(1) << keep) - 1);
        }
        while (word) {
            int b = std::countr_zero(word);
            word &= word - 1;
            double n = static_cast<double>(n0 + base + static_cast<uint64_t>(b));
            double ln = std::log(n);
            double p = reciprocal ? 1.0 / n : std::exp(-sigma * ln);
            ++count;
            double t = p;
            neumaier_add(s[0], c[0], t);
            for (int a = 1; a <= amax; ++a) {
                t *= ln;
                neumaier_add(s[a], c[a], t);
            }
        }
    }

    PowerSums out;
    out.count = count;
    for (int a = 0; a <= amax; ++a) out.sums[a] = s[a] + c[a];
    return out;
}

void CompensatedTotals::add(const PowerSums& part, int amax) {
    count += part.count;
    for (int a = 0; a <= amax; ++a) {
        double v = part.sums[a];
        double t = sum[a] + v;
        if (std::abs(sum[a]) >= std::abs(v))
            comp[a] += (sum[a] - t) + v;
        else
            comp[a] += (v - t) + sum[a];
        sum[a] = t;
    }
}

}  // namespace kfree::kernels
