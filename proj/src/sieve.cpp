#include "kfree/sieve.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <future>
#include <sstream>

#include "kfree/errors.hpp"

namespace kfree::sieve {

namespace {

uint64_t isqrt_floor(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Largest r with r^k <= n, for k >= 2.
uint64_t iroot_floor(uint64_t n, int k) {
    if (k == 2) return isqrt_floor(n);
    auto pow_le = [&](uint64_t r) {
        uint64_t acc = 1;
        for (int i = 0; i < k; ++i) {
            if (r != 0 && acc > n / r) return false;
            acc *= r;
        }
        return acc <= n;
    };
    uint64_t r = static_cast<uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

uint64_t checked_pow(uint64_t p, int k) {
    uint64_t acc = 1;
    for (int i = 0; i < k; ++i) acc *= p;
    return acc;
}

void check_block_budget(uint64_t bytes, const char* what) {
    if (bytes > kBlockBudgetBytes) {
        std::ostringstream os;
        os << what << " block of " << bytes << " bytes exceeds budget of "
           << kBlockBudgetBytes;
        throw CapacityError(os.str());
    }
}

}  // namespace

std::vector<uint32_t> primes_upto(uint64_t limit) {
    std::vector<uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<uint8_t> composite((limit + 1), 0);
    for (uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(static_cast<uint32_t>(i));
    return primes;
}

uint64_t IndicatorBlock::count() const {
    uint64_t total = 0;
    uint64_t full_words = len >> 6;
    for (uint64_t w = 0; w < full_words; ++w) total += std::popcount(bits[w]);
    uint64_t rem = len & 63;
    if (rem) total += std::popcount(bits[full_words] & ((uint64_t(1) << rem) - 1));
    return total;
}

MobiusBlock sieve_mobius_segment(uint64_t lo, uint64_t hi) {
    if (lo < 1 || hi < lo) throw RangeError("sieve_mobius_segment: need 1 <= lo <= hi");
    uint64_t len = hi - lo + 1;
    check_block_budget(len * (sizeof(int8_t) + sizeof(uint64_t)), "mobius");

    MobiusBlock block;
    block.start = lo;
    block.len = len;
    block.values.assign(len, 1);
    std::vector<uint64_t> rem(len);
    for (uint64_t i = 0; i < len; ++i) rem[i] = lo + i;

    auto primes = primes_upto(isqrt_floor(hi));
    for (uint32_t p : primes) {
        uint64_t p2 = uint64_t(p) * p;
        uint64_t first = ((lo + p - 1) / p) * p;
        for (uint64_t m = first; m <= hi; m += p) {
            uint64_t i = m - lo;
            block.values[i] = static_cast<int8_t>(-block.values[i]);
            rem[i] /= p;
        }
        uint64_t first2 = ((lo + p2 - 1) / p2) * p2;
        for (uint64_t m = first2; m <= hi; m += p2) block.values[m - lo] = 0;
    }
    // A cofactor > 1 is a single prime above sqrt(hi): one more sign flip.
    for (uint64_t i = 0; i < len; ++i)
        if (rem[i] > 1) block.values[i] = static_cast<int8_t>(-block.values[i]);
    if (lo == 1) block.values[0] = 1;
    return block;
}

MobiusBlock sieve_mobius(uint64_t limit) {
    if (limit < 1) throw RangeError("sieve_mobius: limit must be >= 1");
    return sieve_mobius_segment(1, limit);
}

IndicatorBlock sieve_kfree(int k, uint64_t lo, uint64_t hi) {
    if (k < 2) throw RangeError("sieve_kfree: k must be >= 2");
    if (lo < 1 || hi < lo) throw RangeError("sieve_kfree: need 1 <= lo <= hi");
    uint64_t len = hi - lo + 1;
    check_block_budget((len + 7) / 8, "indicator");

    IndicatorBlock block;
    block.k = k;
    block.start = lo;
    block.len = len;
    block.bits.assign((len + 63) / 64, ~uint64_t(0));
    uint64_t rem = len & 63;
    if (rem) block.bits.back() = (uint64_t(1) << rem) - 1;

    auto primes = primes_upto(iroot_floor(hi, k));
    for (uint32_t p : primes) {
        uint64_t pk = checked_pow(p, k);
        for (uint64_t m = ((lo + pk - 1) / pk) * pk; m <= hi; m += pk) {
            uint64_t i = m - lo;
            block.bits[i >> 6] &= ~(uint64_t(1) << (i & 63));
        }
    }
    return block;
}

int mobius_bruteforce(uint64_t n) {
    if (n == 0) throw RangeError("mobius_bruteforce: n must be >= 1");
    int factors = 0;
    for (uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++factors;
        }
    }
    if (n > 1) ++factors;
    return (factors & 1) ? -1 : 1;
}

int kfree_via_mobius_sum(int k, uint64_t n) {
    if (k < 2 || n < 1) throw RangeError("kfree_via_mobius_sum: need k >= 2, n >= 1");
    int sum = 0;
    for (uint64_t d = 1;; ++d) {
        uint64_t dk = checked_pow(d, k);
        if (dk > n) break;
        if (n % dk == 0) sum += mobius_bruteforce(d);
    }
    return sum;
}

namespace {

IndicatorBlock make_segment(int k, uint64_t lo, uint64_t hi,
                            const std::vector<uint32_t>& primes) {
    uint64_t len = hi - lo + 1;
    IndicatorBlock block;
    block.k = k;
    block.start = lo;
    block.len = len;
    block.bits.assign((len + 63) / 64, ~uint64_t(0));
    uint64_t rem = len & 63;
    if (rem) block.bits.back() = (uint64_t(1) << rem) - 1;
    for (uint32_t p : primes) {
        uint64_t pk = checked_pow(p, k);
        if (pk > hi) break;
        for (uint64_t m = ((lo + pk - 1) / pk) * pk; m <= hi; m += pk) {
            uint64_t i = m - lo;
            block.bits[i >> 6] &= ~(uint64_t(1) << (i & 63));
        }
    }
    return block;
}

}  // namespace

IndicatorBlock sieve_kfree_segment(int k, uint64_t lo, uint64_t hi,
                                   const std::vector<uint32_t>& primes,
                                   const SieveOptions& opt) {
    if (opt.cache_dir) {
        auto file = cache_file_path(*opt.cache_dir, k, lo, hi - lo + 1);
        if (std::filesystem::exists(file)) return read_cache(file);
        IndicatorBlock block = make_segment(k, lo, hi, primes);
        write_cache(block, file);
        return block;
    }
    return make_segment(k, lo, hi, primes);
}

void stream_kfree(int k, uint64_t xmax, const SieveOptions& opt,
                  const std::function<void(const IndicatorBlock&)>& consume) {
    if (k < 2) throw RangeError("stream_kfree: k must be >= 2");
    if (xmax < 1) throw RangeError("stream_kfree: xmax must be >= 1");
    uint64_t seg = opt.segment_size;
    if (seg == 0 || seg % 64 != 0) throw RangeError("stream_kfree: segment_size must be a positive multiple of 64");

    auto primes = primes_upto(iroot_floor(xmax, k));
    uint64_t nseg = (xmax + seg - 1) / seg;
    unsigned workers = std::max(1u, opt.threads);

    if (workers == 1) {
        for (uint64_t i = 0; i < nseg; ++i) {
            uint64_t lo = 1 + i * seg;
            uint64_t hi = std::min(xmax, lo + seg - 1);
            consume(sieve_kfree_segment(k, lo, hi, primes, opt));
        }
        return;
    }

    // Sieve up to `workers` segments concurrently, deliver strictly in order.
    std::vector<std::future<IndicatorBlock>> wave;
    for (uint64_t base = 0; base < nseg; base += workers) {
        uint64_t count = std::min<uint64_t>(workers, nseg - base);
        wave.clear();
        for (uint64_t i = 0; i < count; ++i) {
            uint64_t lo = 1 + (base + i) * seg;
            uint64_t hi = std::min(xmax, lo + seg - 1);
            wave.push_back(std::async(std::launch::async, [=, &primes, &opt] {
                return sieve_kfree_segment(k, lo, hi, primes, opt);
            }));
        }
        for (auto& f : wave) consume(f.get());
    }
}

namespace {

void put_u64_le(std::ofstream& out, uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

uint64_t get_u64_le(std::ifstream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= uint64_t(buf[i]) << (8 * i);
    return v;
}

}  // namespace

std::filesystem::path cache_file_path(const std::filesystem::path& dir, int k,
                                      uint64_t start, uint64_t len) {
    std::ostringstream name;
    name << "k" << k << "_" << start << "_" << len << ".kfrz";
    return dir / name.str();
}

void write_cache(const IndicatorBlock& block, const std::filesystem::path& file) {
    std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("write_cache: cannot open " + file.string());
    out.write("KFRZ", 4);
    char ver = 0x01;
    out.put(ver);
    out.put(static_cast<char>(block.k));
    put_u64_le(out, block.start);
    put_u64_le(out, block.len);
    // Words are little-endian, so dumping them yields an LSB-first bitstream.
    uint64_t nbytes = (block.len + 7) / 8;
    const char* raw = reinterpret_cast<const char*>(block.bits.data());
    out.write(raw, static_cast<std::streamsize>(nbytes));
    if (!out) throw IoError("write_cache: short write to " + file.string());
}

IndicatorBlock read_cache(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("read_cache: cannot open " + file.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "KFRZ", 4) != 0)
        throw IoError("read_cache: bad magic in " + file.string());
    int ver = in.get();
    if (ver != 0x01) throw IoError("read_cache: unsupported version in " + file.string());
    IndicatorBlock block;
    block.k = in.get();
    block.start = get_u64_le(in);
    block.len = get_u64_le(in);
    if (!in || block.k < 2 || block.len == 0)
        throw IoError("read_cache: corrupt header in " + file.string());
    check_block_budget((block.len + 7) / 8, "indicator");
    block.bits.assign((block.len + 63) / 64, 0);
    uint64_t nbytes = (block.len + 7) / 8;
    in.read(reinterpret_cast<char*>(block.bits.data()), static_cast<std::streamsize>(nbytes));
    if (!in) throw IoError("read_cache: truncated payload in " + file.string());
    return block;
}

}  // namespace kfree::sieve
