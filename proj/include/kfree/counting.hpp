#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>

#include "kfree/sieve.hpp"

namespace kfree::counting {

// One point of the k-free counting function: q = Q_k(x), f = q - x/zeta(k).
// q is a half-integer under the averaged step convention and an integer
// elsewhere; both are exact in a double.
struct CountingCheckpoint {
    double x = 0;
    double q = 0;
    double f = 0;
};

// Value convention at an integer step of Q_k: the count just left of the
// step, just right of it, or the average of the two.
enum class StepConvention { left, right, average };

CountingCheckpoint count_Q(int k, double x, StepConvention conv,
                           const sieve::SieveOptions& opt = {});

// Emits one right-convention checkpoint per integer x = 1..xmax, in order.
// q increments by exactly the indicator value; f is derived pointwise from
// the shared 1/zeta(k) so that q reconstructs from f + x/zeta(k) exactly.
void checkpoint_stream(int k, uint64_t xmax, const sieve::SieveOptions& opt,
                       const std::function<void(const CountingCheckpoint&)>& emit);

struct RemainderScan {
    double c_obs = 0;        // sup over [2, xmax] of |f_k(x)| / x^(1/k)
    double exponent_fit = 0; // least-squares slope of log10 |f| decade peaks
};

RemainderScan remainder_bound_scan(int k, uint64_t xmax,
                                   const sieve::SieveOptions& opt = {});

// CSV emitter, columns x,q,f, one row per stride step (plus x = xmax).
void checkpoint_csv(std::ostream& out, int k, uint64_t xmax, uint64_t stride,
                    const sieve::SieveOptions& opt = {});

}  // namespace kfree::counting
