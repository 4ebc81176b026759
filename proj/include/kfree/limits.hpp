#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "kfree/kernels.hpp"
#include "kfree/realx.hpp"
#include "kfree/sieve.hpp"

namespace kfree::limits {

enum class EstimateMethod { wolf_limit, remainder_integral, cj_recurrence };

// A finite-x estimate of gamma^{M,k}_n with its predicted truncation error
// C * x^(1/(2k) - 1) * log^n(x); C is calibrated from the drift over the last
// two decades of the run and recorded.
struct CoefficientEstimate {
    int k = 2;
    int n = 0;
    uint64_t x = 0;
    RealX value;
    RealX predicted_error;
    double calibration_c = 0;
    EstimateMethod method = EstimateMethod::wolf_limit;
};

// Log-limit estimator:
//   value = (-1)^n [ sum_{j<=x} mu_k(j) log^n(j)/j - log^(n+1)(x)/(zeta(k)(n+1)) ].
CoefficientEstimate wolf_limit(int n, int k, uint64_t x,
                               const sieve::SieveOptions& opt = {},
                               kernels::Variant variant = kernels::preferred_variant());

// All orders 0..nmax from one pass (log j is computed once per j).
std::vector<CoefficientEstimate> wolf_limit_all(
    int nmax, int k, uint64_t x, const sieve::SieveOptions& opt = {},
    kernels::Variant variant = kernels::preferred_variant());

// Remainder-integral coefficients of the exp-log expansion,
//   c_j = (-1)^j int_{1-}^{xmax} log^j(t)/t^2 f_k(t) dt,
// integrated in closed form on each unit interval (f_k is affine there).
RealX cj_integral(int j, int k, uint64_t xmax, const sieve::SieveOptions& opt = {},
                  kernels::Variant variant = kernels::preferred_variant());

// y_m = (-1)^m int_{1-}^{xmax} [log^m(t) - m log^(m-1)(t)]/t^2 f_k(t) dt, plus
// B_0 = 1/zeta(k) when m = 0, so the returned value estimates gamma^{M,k}_m.
CoefficientEstimate ym_integral(int m, int k, uint64_t xmax,
                                const sieve::SieveOptions& opt = {},
                                kernels::Variant variant = kernels::preferred_variant());

// Same target through the coefficient recurrence y_m = m c_{m-1} + c_m.
CoefficientEstimate gamma_from_cj_recurrence(
    int m, int k, uint64_t xmax, const sieve::SieveOptions& opt = {},
    kernels::Variant variant = kernels::preferred_variant());

// Raw y_m (no B_0 bookkeeping), used by the identity checks.
double ym_integral_raw(int m, int k, uint64_t xmax,
                       const sieve::SieveOptions& opt = {},
                       kernels::Variant variant = kernels::preferred_variant());

// Spot audit: recompute sum_{lo<=j<hi} mu_k(j) log^n(j)/j in extended
// precision and return the absolute difference against the double kernel.
double audit_window_extended(int n, int k, uint64_t lo, uint64_t hi,
                             const sieve::SieveOptions& opt = {},
                             kernels::Variant variant = kernels::preferred_variant());

// CSV convergence emitter: columns x,estimate,reference,abs_error at
// logarithmic strides up to xmax.
void convergence_csv(std::ostream& out, int n, int k, uint64_t xmax,
                     const RealX& reference, const sieve::SieveOptions& opt = {},
                     kernels::Variant variant = kernels::preferred_variant());

}  // namespace kfree::limits
