#include "kfree/laurent.hpp"

#include <cmath>

#include "kfree/complexx.hpp"
#include "kfree/contour.hpp"
#include "kfree/errors.hpp"
#include "kfree/zetacore.hpp"

namespace kfree::laurent {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::log10;
using boost::multiprecision::pow;

int contour_work_digits(int digits, int N, double radius) {
    // n!/r^n amplifies node rounding in the n-th coefficient.
    double amplification =
        std::lgamma(N + 1.0) / std::log(10.0) + N * std::log10(1.0 / radius);
    return digits + 12 + static_cast<int>(std::ceil(std::max(0.0, amplification)));
}

}  // namespace

RealX closed_form_gamma0(int k, int digits) {
    if (k < 2) throw RangeError("closed_form_gamma0: k must be >= 2");
    int work = digits + 8;
    PrecisionGuard guard(work);
    RealX g = zetacore::euler_gamma(work);
    RealX z = zetacore::zeta_em(RealX(k), work);
    RealX zp = zetacore::zeta_derivative(1, k, work);
    RealX v = g / z - k * zp / (z * z);
    return round_to(v, digits);
}

LaurentExpansion extract_coeffs(int k, int N, int digits, double radius, int nodes) {
    if (k < 2) throw RangeError("extract_coeffs: k must be >= 2");
    if (N < 0) throw RangeError("extract_coeffs: N must be >= 0");
    if (!(radius > 0) || radius >= 1.0 + 2.0 / k)
        throw DomainError("extract_coeffs: contour radius must satisfy 0 < r < 1 + 2/k");
    if (nodes < std::max(4, 4 * N) || (nodes & (nodes - 1)) != 0)
        throw DomainError("extract_coeffs: nodes must be a power of two >= max(4, 4N)");

    int work = contour_work_digits(digits, N, radius);
    PrecisionGuard guard(work);
    RealX zk = zetacore::zeta_em(RealX(k), work);
    RealX lost_worst(0);

    auto g = [&](const ComplexX& s) -> ComplexX {
        ComplexX ratio;
        bool at_denominator_pole = s.im.is_zero() && s.re * k == 1;
        if (at_denominator_pole) {
            // zeta(ks) has its pole here, so the ratio has a zero.
            ratio = ComplexX(RealX(0), RealX(0));
        } else {
            ComplexX zs = zetacore::zeta_em(s, work);
            ComplexX zks = zetacore::zeta_em(ComplexX{k * s.re, k * s.im}, work);
            ratio = zs * reciprocal(zks);
        }
        ComplexX pole = reciprocal(ComplexX{zk * (s.re - 1), zk * s.im});
        ComplexX val = ratio - pole;
        // The subtraction is the one cancellation point; watch the digit loss.
        RealX in_mag = abs(ratio) + abs(pole);
        RealX out_mag = abs(val);
        if (!out_mag.is_zero()) {
            RealX lost = log10(in_mag / out_mag);
            if (lost > lost_worst) lost_worst = lost;
        }
        return val;
    };

    auto taylor = contour::taylor_coeffs_about_one(g, radius, nodes, N, work);
    if (work - lost_worst.convert_to<double>() < 10)
        throw PrecisionError("extract_coeffs: cancellation left fewer than 10 significant digits");

    LaurentExpansion out;
    out.k = k;
    out.precision = digits;
    out.method = Method::contour;
    out.residue = round_to(1 / zk, digits);
    out.coeffs.reserve(N + 1);
    RealX imag_tol = pow(RealX(10), 4 - digits);
    RealX factorial(1);
    for (int n = 0; n <= N; ++n) {
        if (n > 1) factorial *= n;
        const ComplexX& a = taylor.coeffs[n];
        if (abs(a.im) * factorial > imag_tol)
            throw PrecisionError("extract_coeffs: imaginary residual above tolerance");
        out.coeffs.push_back(round_to(factorial * a.re, digits));
    }
    return out;
}

LaurentExpansion series_product_coeffs(int k, int N, int digits) {
    if (k < 2) throw RangeError("series_product_coeffs: k must be >= 2");
    if (N < 0 || N > 16) throw RangeError("series_product_coeffs: need 0 <= N <= 16");

    int work = digits + 15;
    PrecisionGuard guard(work);

    // Taylor coefficients of zeta(k + k u) in u: d_j = zeta^(j)(k) k^j / j!.
    std::vector<RealX> d(N + 2);
    RealX kj(1), factorial(1);
    for (int j = 0; j <= N + 1; ++j) {
        if (j > 0) {
            kj *= k;
            factorial *= j;
        }
        d[j] = zetacore::zeta_derivative(j, k, work) * kj / factorial;
    }

    // Power-series reciprocal b = 1/d with digit-loss monitoring.
    std::vector<RealX> b(N + 2);
    b[0] = 1 / d[0];
    RealX lost_worst(0);
    for (int m = 1; m <= N + 1; ++m) {
        RealX acc(0), peak(0);
        for (int i = 1; i <= m; ++i) {
            RealX t = d[i] * b[m - i];
            acc += t;
            RealX mag = abs(t);
            if (mag > peak) peak = mag;
        }
        b[m] = -acc / d[0];
        if (!acc.is_zero() && !peak.is_zero()) {
            RealX lost = log10(peak / abs(acc));
            if (lost > lost_worst) lost_worst = lost;
        }
    }
    if (lost_worst.convert_to<double>() > digits - 10)
        throw PrecisionError("series_product_coeffs: reciprocal lost more than digits-10 digits");

    // Laurent series of zeta: 1/u + sum_m e_m u^m with e_m = (-1)^m gamma_m/m!.
    std::vector<RealX> gammas = zetacore::stieltjes_gammas(N, work);
    std::vector<RealX> e(N + 1);
    factorial = 1;
    for (int m = 0; m <= N; ++m) {
        if (m > 1) factorial *= m;
        e[m] = gammas[m] / factorial;
        if (m & 1) e[m] = -e[m];
    }

    LaurentExpansion out;
    out.k = k;
    out.precision = digits;
    out.method = Method::series_product;
    out.residue = round_to(b[0], digits);
    out.coeffs.reserve(N + 1);
    factorial = 1;
    for (int n = 0; n <= N; ++n) {
        if (n > 1) factorial *= n;
        RealX c = b[n + 1];
        for (int m = 0; m <= n; ++m) c += e[m] * b[n - m];
        out.coeffs.push_back(round_to(factorial * c, digits));
    }
    return out;
}

}  // namespace kfree::laurent
