#pragma once

#include <vector>

#include "kfree/complexx.hpp"
#include "kfree/realx.hpp"

namespace kfree::zetacore {

// Riemann zeta for s != 1 by the Euler-Maclaurin formula
//   zeta(s) = sum_{n<=N} n^-s - N^-s/2 + N^(1-s)/(s-1)
//           + sum_r B_2r/(2r)! * (s)(s+1)...(s+2r-2) * N^(1-s-2r)
// with N = max(ceil|s| + 10, ceil(1.3 * digits)) and the correction deepened
// until the last term drops below 10^-(digits+2) (hard failure at depth 60).
// Absolute error <= 10^(1-digits).
ComplexX zeta_em(const ComplexX& s, int digits);
RealX zeta_em(const RealX& s, int digits);

// zeta^(j)(k) = (-1)^j sum_{n>=2} log^j(n) / n^k, Euler-Maclaurin accelerated.
RealX zeta_derivative(int j, int k, int digits);

// Euler-Mascheroni constant via the harmonic limit with Euler-Maclaurin
// correction: gamma = H_N - log N - 1/(2N) + sum_r B_2r/(2r N^2r).
RealX euler_gamma(int digits);

// n-th Stieltjes constant (gamma_0 = gamma): regular Laurent coefficients of
// zeta at s = 1 with the conventional sign,
//   zeta(s) = 1/(s-1) + sum_n (-1)^n gamma_n (s-1)^n / n!.
// Extracted by contour quadrature of zeta(s) - 1/(s-1) about s = 1, the same
// method the Laurent module uses. Error <= 10^(2-digits). Requires n <= 16.
RealX stieltjes_gamma(int n, int digits);

// gamma_0..gamma_nmax from a single contour pass.
std::vector<RealX> stieltjes_gammas(int nmax, int digits);

// Shared per-process constants at double precision; computed once from the
// extended-precision path and cached.
double zeta_double(int k);
double inv_zeta_double(int k);

}  // namespace kfree::zetacore
