#include "kfree/summation.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "kfree/errors.hpp"

namespace kfree::sums {

namespace {

uint64_t integer_root_floor(uint64_t n, int k) {
    uint64_t r = static_cast<uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    auto ok = [&](uint64_t v) {
        uint64_t acc = 1;
        for (int i = 0; i < k; ++i) {
            if (v != 0 && acc > n / v) return false;
            acc *= v;
        }
        return acc <= n;
    };
    while (r > 0 && !ok(r)) --r;
    while (ok(r + 1)) ++r;
    return r;
}

// Partial sums of one segment, split at the cut boundaries that fall inside.
struct SegmentPartials {
    std::vector<std::pair<uint64_t, kernels::PowerSums>> pieces;  // (end_x, sums over piece)
};

SegmentPartials segment_partials(const sieve::IndicatorBlock& block, uint64_t lo,
                                 const std::vector<uint64_t>& cuts, double sigma,
                                 int amax, kernels::Variant variant) {
    SegmentPartials out;
    uint64_t seg_lo = std::max(block.start, lo);
    uint64_t seg_hi = block.start + block.len - 1;
    if (seg_lo > seg_hi) return out;

    uint64_t piece_lo = seg_lo;
    for (uint64_t cut : cuts) {
        if (cut < piece_lo) continue;
        uint64_t piece_hi = std::min(cut, seg_hi);
        out.pieces.emplace_back(
            piece_hi, kernels::masked_power_sums(block.words(), block.start,
                                                 piece_lo - block.start,
                                                 piece_hi - block.start + 1, sigma,
                                                 amax, variant));
        piece_lo = piece_hi + 1;
        if (piece_lo > seg_hi) break;
    }
    return out;
}

}  // namespace

std::vector<Snapshot> power_sum_series(int k, uint64_t lo,
                                       const std::vector<uint64_t>& cuts,
                                       double sigma, int amax,
                                       const sieve::SieveOptions& opt,
                                       kernels::Variant variant) {
    if (cuts.empty()) throw RangeError("power_sum_series: need at least one cut");
    if (!std::is_sorted(cuts.begin(), cuts.end()))
        throw RangeError("power_sum_series: cuts must be ascending");
    if (lo < 1) throw RangeError("power_sum_series: lo must be >= 1");
    if (cuts.front() < lo) throw RangeError("power_sum_series: cuts must be >= lo");
    uint64_t xmax = cuts.back();
    uint64_t seg = opt.segment_size;
    if (seg == 0 || seg % 64 != 0)
        throw RangeError("power_sum_series: segment_size must be a positive multiple of 64");

    auto primes = sieve::primes_upto(integer_root_floor(xmax, k));
    uint64_t nseg = (xmax + seg - 1) / seg;
    unsigned workers = std::max(1u, opt.threads);

    kernels::CompensatedTotals totals;
    std::vector<Snapshot> out;
    size_t next_cut = 0;
    auto absorb = [&](const SegmentPartials& parts) {
        for (const auto& [end_x, sums] : parts.pieces) {
            totals.add(sums, amax);
            while (next_cut < cuts.size() && cuts[next_cut] == end_x) {
                Snapshot snap;
                snap.x = end_x;
                snap.count = totals.count;
                for (int a = 0; a <= amax; ++a) snap.sums[a] = totals.total(a);
                out.push_back(snap);
                ++next_cut;
            }
        }
    };

    auto make_parts = [&](uint64_t index) {
        uint64_t seg_lo = 1 + index * seg;
        uint64_t seg_hi = std::min(xmax, seg_lo + seg - 1);
        auto block = sieve::sieve_kfree_segment(k, seg_lo, seg_hi, primes, opt);
        return segment_partials(block, lo, cuts, sigma, amax, variant);
    };

    if (workers == 1) {
        for (uint64_t i = 0; i < nseg; ++i) absorb(make_parts(i));
    } else {
        std::vector<std::future<SegmentPartials>> wave;
        for (uint64_t base = 0; base < nseg; base += workers) {
            uint64_t n = std::min<uint64_t>(workers, nseg - base);
            wave.clear();
            for (uint64_t i = 0; i < n; ++i)
                wave.push_back(std::async(std::launch::async,
                                          [&make_parts, idx = base + i] { return make_parts(idx); }));
            for (auto& f : wave) absorb(f.get());
        }
    }

    // Duplicate cuts (or cuts below lo with empty ranges) still get snapshots.
    while (next_cut < cuts.size()) {
        Snapshot snap;
        snap.x = cuts[next_cut];
        snap.count = totals.count;
        for (int a = 0; a <= amax; ++a) snap.sums[a] = totals.total(a);
        out.push_back(snap);
        ++next_cut;
    }
    return out;
}

Snapshot power_sum(int k, uint64_t lo, uint64_t x, double sigma, int amax,
                   const sieve::SieveOptions& opt, kernels::Variant variant) {
    return power_sum_series(k, lo, {x}, sigma, amax, opt, variant).front();
}

}  // namespace kfree::sums
