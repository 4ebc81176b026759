#pragma once

#include <vector>

#include "kfree/realx.hpp"

namespace kfree::laurent {

enum class Method { closed_form_n0, contour, series_product };

// Laurent data of zeta(s)/zeta(ks) about s = 1:
//   zeta(s)/zeta(ks) = 1/(zeta(k)(s-1)) + sum_n coeffs[n] (s-1)^n / n!.
struct LaurentExpansion {
    int k = 2;
    RealX residue;              // 1/zeta(k)
    std::vector<RealX> coeffs;  // regular coefficients, index 0..N
    int precision = 0;          // decimal digits
    Method method = Method::contour;
};

// Closed form for the leading regular coefficient:
//   gamma/zeta(k) - k zeta'(k)/zeta(k)^2.
RealX closed_form_gamma0(int k, int digits);

// Coefficients 0..N by contour quadrature of
//   g(s) = zeta(s)/zeta(ks) - 1/(zeta(k)(s-1))
// on the circle |s-1| = radius with `nodes` trapezoidal points. Requires
// radius < 1 + 2/k (the disk of analyticity) and nodes a power of two
// >= max(4, 4N). Imaginary residues of the estimates are checked against
// 10^(4-digits) and discarded.
LaurentExpansion extract_coeffs(int k, int N, int digits, double radius = 0.5,
                                int nodes = 256);

// Coefficients 0..N by formal series arithmetic: the Taylor series of
// 1/zeta(ks) at s = 1 (from zeta derivatives at k and a power-series
// reciprocal) multiplied by the Laurent series of zeta (from the Stieltjes
// constants). Requires N <= 16.
LaurentExpansion series_product_coeffs(int k, int N, int digits);

}  // namespace kfree::laurent
