#pragma once

#include <functional>
#include <vector>

#include "kfree/complexx.hpp"

namespace kfree::contour {

// Taylor coefficients a_0..a_N of f about s = 1 by the trapezoidal rule on
// the circle |s - 1| = radius:
//   a_n = 1/(M r^n) * sum_j f(1 + r e^{i theta_j}) e^{-i n theta_j}.
// Spectrally accurate for f analytic on a disk larger than the circle. The
// imaginary parts of the a_n are kept so callers can verify they are at
// rounding level before discarding them.
struct TaylorCoeffs {
    std::vector<ComplexX> coeffs;
};

TaylorCoeffs taylor_coeffs_about_one(
    const std::function<ComplexX(const ComplexX&)>& f, double radius, int nodes,
    int ncoeffs, int digits);

}  // namespace kfree::contour
