#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "kfree/kernels.hpp"
#include "kfree/sieve.hpp"

namespace kfree::sums {

// Cumulative masked power sums taken at a list of cut points:
//   sums[a] = sum_{lo <= j <= x, j k-free} log(j)^a * j^(-sigma)
// count is the number of k-free integers in [lo, x].
struct Snapshot {
    uint64_t x = 0;
    uint64_t count = 0;
    std::array<double, kernels::kMaxLogPower + 1> sums{};
};

// Runs the sieve over [1, cuts.back()] and accumulates kernel partial sums
// over j in [lo, x], snapshotting the compensated totals at every cut.
// Segments may be sieved and summed by opt.threads workers; partial sums are
// merged in segment order, so results are independent of the thread count.
std::vector<Snapshot> power_sum_series(int k, uint64_t lo,
                                       const std::vector<uint64_t>& cuts,
                                       double sigma, int amax,
                                       const sieve::SieveOptions& opt,
                                       kernels::Variant variant);

// Convenience: single cut at x.
Snapshot power_sum(int k, uint64_t lo, uint64_t x, double sigma, int amax,
                   const sieve::SieveOptions& opt, kernels::Variant variant);

}  // namespace kfree::sums
