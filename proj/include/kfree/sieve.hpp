#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

namespace kfree::sieve {

// Options shared by every streaming consumer of sieve data.
struct SieveOptions {
    uint64_t segment_size = uint64_t(1) << 22;  // integers per segment, multiple of 64
    unsigned threads = 1;
    std::optional<std::filesystem::path> cache_dir;
};

// Per-block memory budget: a single materialized block may not exceed this.
inline constexpr uint64_t kBlockBudgetBytes = uint64_t(2) << 30;

std::vector<uint32_t> primes_upto(uint64_t limit);

// Packed k-free indicator over [start, start+len): bit i = 1 iff start+i is
// k-free (not divisible by any p^k). Immutable after construction.
struct IndicatorBlock {
    int k = 2;
    uint64_t start = 1;
    uint64_t len = 0;
    std::vector<uint64_t> bits;  // LSB-first within each word

    bool test(uint64_t n) const {
        uint64_t i = n - start;
        return (bits[i >> 6] >> (i & 63)) & 1;
    }
    uint64_t count() const;  // number of set bits
    const uint64_t* words() const { return bits.data(); }
};

// Mobius values over [start, start+len): values[i] = mu(start+i) in {-1,0,1}.
struct MobiusBlock {
    uint64_t start = 1;
    uint64_t len = 0;
    std::vector<int8_t> values;

    int at(uint64_t n) const { return values[n - start]; }
};

MobiusBlock sieve_mobius(uint64_t limit);                     // covers [1, limit]
MobiusBlock sieve_mobius_segment(uint64_t lo, uint64_t hi);   // covers [lo, hi]

IndicatorBlock sieve_kfree(int k, uint64_t lo, uint64_t hi);  // covers [lo, hi]

// Brute-force oracle: sum of mu(d) over d with d^k | n. Equals the k-free
// indicator of n. Uses trial-division mu, independent of the sieves above.
int kfree_via_mobius_sum(int k, uint64_t n);

// Trial-division Mobius, used by the oracle and by tests.
int mobius_bruteforce(uint64_t n);

// Streams indicator blocks for [1, xmax] in increasing order. Segments are
// sieved independently (optionally by a worker pool and/or from a disk
// cache); delivery order and block contents do not depend on thread count.
void stream_kfree(int k, uint64_t xmax, const SieveOptions& opt,
                  const std::function<void(const IndicatorBlock&)>& consume);

// One segment [lo, hi], reusing the disk cache when opt.cache_dir is set.
// `primes` must cover hi^(1/k).
IndicatorBlock sieve_kfree_segment(int k, uint64_t lo, uint64_t hi,
                                   const std::vector<uint32_t>& primes,
                                   const SieveOptions& opt);

// Disk cache: "KFRZ" magic, version 0x01, k (1 byte), start and len (8-byte
// little-endian each), then the packed bitstream (LSB-first) padded to a
// byte boundary.
void write_cache(const IndicatorBlock& block, const std::filesystem::path& file);
IndicatorBlock read_cache(const std::filesystem::path& file);
std::filesystem::path cache_file_path(const std::filesystem::path& dir, int k,
                                      uint64_t start, uint64_t len);

}  // namespace kfree::sieve
