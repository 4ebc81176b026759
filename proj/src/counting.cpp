#include "kfree/counting.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "kfree/errors.hpp"
#include "kfree/zetacore.hpp"

namespace kfree::counting {

namespace {

// Walks indicator bits for n = 1..xmax and hands (n, q) to the sink.
template <typename Fn>
void walk_counts(int k, uint64_t xmax, const sieve::SieveOptions& opt, Fn&& sink) {
    uint64_t q = 0;
    sieve::stream_kfree(k, xmax, opt, [&](const sieve::IndicatorBlock& block) {
        uint64_t n = block.start;
        uint64_t end = std::min(block.start + block.len - 1, xmax);
        const uint64_t* words = block.words();
        for (uint64_t w = 0; n <= end; ++w) {
            uint64_t word = words[w];
            for (int b = 0; b < 64 && n <= end; ++b, ++n) {
                q += (word >> b) & 1;
                sink(n, q);
            }
        }
    });
}

}  // namespace

CountingCheckpoint count_Q(int k, double x, StepConvention conv,
                           const sieve::SieveOptions& opt) {
    if (k < 2) throw RangeError("count_Q: k must be >= 2");
    if (!(x >= 0)) throw RangeError("count_Q: x must be >= 0");
    double invz = zetacore::inv_zeta_double(k);

    double fl = std::floor(x);
    uint64_t nmax = static_cast<uint64_t>(fl);
    CountingCheckpoint cp;
    cp.x = x;
    if (nmax == 0) {
        cp.q = 0;
        cp.f = cp.q - x * invz;
        return cp;
    }

    auto block = [&] {
        // One block covers the whole range here; count_Q is a point query.
        return sieve::sieve_kfree(k, 1, nmax);
    }();
    double q = static_cast<double>(block.count());
    bool integer_x = (x == fl);
    if (integer_x && conv != StepConvention::right) {
        double jump = block.test(nmax) ? 1.0 : 0.0;
        q -= (conv == StepConvention::left) ? jump : jump / 2;
    }
    cp.q = q;
    cp.f = q - x * invz;
    return cp;
}

void checkpoint_stream(int k, uint64_t xmax, const sieve::SieveOptions& opt,
                       const std::function<void(const CountingCheckpoint&)>& emit) {
    if (k < 2) throw RangeError("checkpoint_stream: k must be >= 2");
    if (xmax < 1) throw RangeError("checkpoint_stream: xmax must be >= 1");
    double invz = zetacore::inv_zeta_double(k);
    walk_counts(k, xmax, opt, [&](uint64_t n, uint64_t q) {
        CountingCheckpoint cp;
        cp.x = static_cast<double>(n);
        cp.q = static_cast<double>(q);
        cp.f = cp.q - cp.x * invz;
        emit(cp);
    });
}

RemainderScan remainder_bound_scan(int k, uint64_t xmax,
                                   const sieve::SieveOptions& opt) {
    if (k < 2) throw RangeError("remainder_bound_scan: k must be >= 2");
    if (xmax < 10000) throw RangeError("remainder_bound_scan: xmax must be >= 10^4");
    double invz = zetacore::inv_zeta_double(k);
    double inv_k = 1.0 / k;

    double sup_ratio = 0;
    // Envelope peak of |f| per decade [10^d, 10^(d+1)).
    std::vector<double> peak_val, peak_x;
    auto note_decade = [&](uint64_t x, double absf) {
        int d = static_cast<int>(std::floor(std::log10(static_cast<double>(x))));
        if (static_cast<int>(peak_val.size()) <= d) {
            peak_val.resize(d + 1, 0.0);
            peak_x.resize(d + 1, 1.0);
        }
        if (absf > peak_val[d]) {
            peak_val[d] = absf;
            peak_x[d] = static_cast<double>(x);
        }
    };

    walk_counts(k, xmax, opt, [&](uint64_t n, uint64_t q) {
        if (n < 2) return;
        double qd = static_cast<double>(n);
        // f just right of the step at n, and just left of the step at n+1;
        // f is linear in between, so these bound the envelope on [n, n+1).
        double f_right = static_cast<double>(q) - qd * invz;
        double f_left_next = static_cast<double>(q) - (qd + 1.0) * invz;
        double a_right = std::abs(f_right);
        double a_left = std::abs(f_left_next);
        sup_ratio = std::max(sup_ratio, a_right / std::pow(qd, inv_k));
        if (n + 1 <= xmax)
            sup_ratio = std::max(sup_ratio, a_left / std::pow(qd + 1.0, inv_k));
        note_decade(n, std::max(a_right, n + 1 <= xmax ? a_left : 0.0));
    });

    // Least-squares slope of log10(peak) against log10(x) over full decades.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (size_t d = 0; d < peak_val.size(); ++d) {
        if (peak_val[d] <= 0) continue;
        double lx = std::log10(peak_x[d]);
        double ly = std::log10(peak_val[d]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    RemainderScan scan;
    scan.c_obs = sup_ratio;
    scan.exponent_fit = (count >= 2)
                            ? (count * sxy - sx * sy) / (count * sxx - sx * sx)
                            : 0.0;
    return scan;
}

void checkpoint_csv(std::ostream& out, int k, uint64_t xmax, uint64_t stride,
                    const sieve::SieveOptions& opt) {
    if (stride == 0) throw RangeError("checkpoint_csv: stride must be >= 1");
    out << "x,q,f\n";
    char buf[96];
    checkpoint_stream(k, xmax, opt, [&](const CountingCheckpoint& cp) {
        uint64_t n = static_cast<uint64_t>(cp.x);
        if (n % stride != 0 && n != xmax) return;
        std::snprintf(buf, sizeof buf, "%llu,%.0f,%.17g\n",
                      static_cast<unsigned long long>(n), cp.q, cp.f);
        out << buf;
    });
}

}  // namespace kfree::counting
