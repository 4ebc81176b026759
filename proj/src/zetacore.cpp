#include "kfree/zetacore.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "kfree/bernoulli.hpp"
#include "kfree/contour.hpp"
#include "kfree/errors.hpp"

namespace kfree::zetacore {

namespace {

constexpr int kMaxDepth = 60;
constexpr int kMaxDigits = 200;

using boost::multiprecision::abs;
using boost::multiprecision::exp;
using boost::multiprecision::log;
using boost::multiprecision::pow;

// Adapters so one Euler-Maclaurin body serves real and complex s.
RealX power(const RealX& base, const RealX& expo) { return exp(expo * log(base)); }
ComplexX power(const RealX& base, const ComplexX& expo) {
    return pow_positive_base(base, expo);
}
RealX magnitude(const RealX& v) { return abs(v); }
RealX magnitude(const ComplexX& v) { return abs(v); }

template <typename Scalar>
Scalar zeta_em_impl(const Scalar& s, int work_digits) {
    PrecisionGuard guard(work_digits);
    RealX eps = pow(RealX(10), -(work_digits + 2));

    RealX abs_s = magnitude(s);
    long N = std::max<long>(static_cast<long>(std::ceil(abs_s.convert_to<double>())) + 10,
                            static_cast<long>(std::ceil(1.3 * work_digits)));

    Scalar minus_s = -s;
    Scalar sum = Scalar(RealX(1));  // n = 1 term
    RealX tail_guard = eps / N;
    for (long n = 2; n <= N; ++n) {
        Scalar term = power(RealX(n), minus_s);
        sum = sum + term;
        // For Re(s) large the terms die fast; the rest of the sum is then
        // bounded by N * |term| and can be skipped.
        if (magnitude(term) < tail_guard) {
            break;
        }
    }

    Scalar n_pow_1ms = power(RealX(N), Scalar(RealX(1)) - s);  // N^(1-s)
    Scalar n_pow_ms = power(RealX(N), minus_s);                // N^-s
    sum = sum + n_pow_1ms / (s - Scalar(RealX(1)));
    sum = sum - n_pow_ms / Scalar(RealX(2));

    // Corrections: T_r = B_2r/(2r)! * N^(1-s-2r) * prod_{i=0}^{2r-2} (s+i).
    RealX inv_n2 = RealX(1) / (RealX(N) * RealX(N));
    Scalar rising = s;                 // product for r = 1
    Scalar npow = n_pow_1ms * inv_n2;  // N^(1-s-2r) at r = 1
    RealX factorial(2);                // (2r)! at r = 1
    bool converged = false;
    for (int r = 1; r <= kMaxDepth; ++r) {
        Scalar term = (bernoulli_real(2 * r, work_digits) / factorial) * (npow * rising);
        sum = sum + term;
        if (magnitude(term) < eps) {
            converged = true;
            break;
        }
        rising = rising * (s + Scalar(RealX(2 * r - 1))) * (s + Scalar(RealX(2 * r)));
        npow = npow * inv_n2;
        factorial *= RealX(2 * r + 1) * RealX(2 * r + 2);
    }
    if (!converged)
        throw PrecisionError("zeta_em: correction depth 60 exhausted before reaching target");
    return sum;
}

std::once_flag bernoulli_init_flag;

void ensure_tables() {
    // Bernoulli table construction is a magic static; touch it once up front
    // so concurrent callers never race on first use.
    std::call_once(bernoulli_init_flag, [] { (void)bernoulli(2); });
}

}  // namespace

ComplexX zeta_em(const ComplexX& s, int digits) {
    if (digits > kMaxDigits) throw PrecisionError("zeta_em: digits > 200 unsupported");
    if (s.im.is_zero() && s.re == 1) throw PoleError("zeta_em: pole at s = 1");
    ensure_tables();
    int work = digits + 12;
    ComplexX v = zeta_em_impl(ComplexX{round_to(s.re, work), round_to(s.im, work)}, work);
    return {round_to(v.re, digits), round_to(v.im, digits)};
}

RealX zeta_em(const RealX& s, int digits) {
    if (digits > kMaxDigits) throw PrecisionError("zeta_em: digits > 200 unsupported");
    if (s == 1) throw PoleError("zeta_em: pole at s = 1");
    ensure_tables();
    int work = digits + 12;
    RealX v = zeta_em_impl(round_to(s, work), work);
    return round_to(v, digits);
}

RealX zeta_derivative(int j, int k, int digits) {
    if (j < 0) throw RangeError("zeta_derivative: j must be >= 0");
    if (k < 2) throw RangeError("zeta_derivative: k must be >= 2");
    if (digits > kMaxDigits) throw PrecisionError("zeta_derivative: digits > 200 unsupported");
    if (j == 0) return zeta_em(RealX(k), digits);
    ensure_tables();

    int work = digits + 15;
    PrecisionGuard guard(work);
    RealX eps = pow(RealX(10), -(work + 2));
    long N = std::max<long>(k + 10, static_cast<long>(std::ceil(1.3 * work)));

    // Partial sum of log^j(n)/n^k for n = 2..N-1.
    RealX partial(0);
    for (long n = 2; n < N; ++n) {
        RealX ln = log(RealX(n));
        partial += pow(ln, j) / pow(RealX(n), k);
    }

    // Tail integral I_j = int_N^inf log^j(t) t^-k dt by the parts recurrence
    // I_i = (log^i(N) N^(1-k) + i I_{i-1}) / (k-1).
    RealX lnN = log(RealX(N));
    RealX n_1mk = pow(RealX(N), 1 - k);
    RealX integral = n_1mk / (k - 1);
    for (int i = 1; i <= j; ++i) integral = (pow(lnN, i) * n_1mk + i * integral) / (k - 1);

    // f(N)/2 for f(t) = log^j(t) t^-k.
    RealX n_mk = pow(RealX(N), -k);
    RealX total = partial + integral + pow(lnN, j) * n_mk / 2;

    // Odd derivatives of f at N: f^(m)(t) = t^(-k-m) sum_i a_{m,i} log^i(t),
    // with a_{0,i} = [i == j] and a_{m+1,i} = -(k+m) a_{m,i} + (i+1) a_{m,i+1}.
    std::vector<RealX> a(j + 1, RealX(0));
    a[j] = 1;
    std::vector<RealX> lnpow(j + 1);
    lnpow[0] = 1;
    for (int i = 1; i <= j; ++i) lnpow[i] = lnpow[i - 1] * lnN;

    int m = 0;
    RealX n_pow = n_mk;  // N^(-k-m)
    RealX factorial(1);  // (2r)!
    bool converged = false;
    for (int r = 1; r <= kMaxDepth; ++r) {
        while (m < 2 * r - 1) {
            std::vector<RealX> next(j + 1, RealX(0));
            for (int i = 0; i <= j; ++i) {
                next[i] = -(RealX(k) + m) * a[i];
                if (i + 1 <= j) next[i] += (i + 1) * a[i + 1];
            }
            a.swap(next);
            ++m;
            n_pow /= N;
        }
        factorial = 1;
        for (int i = 2; i <= 2 * r; ++i) factorial *= i;
        RealX deriv(0);
        for (int i = 0; i <= j; ++i) deriv += a[i] * lnpow[i];
        deriv *= n_pow;
        RealX term = -(bernoulli_real(2 * r, work) / factorial) * deriv;
        total += term;
        if (abs(term) < eps) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw PrecisionError("zeta_derivative: correction depth 60 exhausted");

    if (j & 1) total = -total;
    return round_to(total, digits);
}

RealX euler_gamma(int digits) {
    if (digits > kMaxDigits) throw PrecisionError("euler_gamma: digits > 200 unsupported");
    ensure_tables();
    int work = digits + 10;
    PrecisionGuard guard(work);
    RealX eps = pow(RealX(10), -(work + 2));
    long N = static_cast<long>(std::ceil(1.3 * work)) + 10;

    RealX harmonic(0);
    for (long n = 1; n <= N; ++n) harmonic += RealX(1) / n;
    RealX g = harmonic - log(RealX(N)) - RealX(1) / (2 * N);

    RealX inv_n2 = RealX(1) / (RealX(N) * RealX(N));
    RealX npow = inv_n2;
    bool converged = false;
    for (int r = 1; r <= kMaxDepth; ++r) {
        RealX term = bernoulli_real(2 * r, work) / (2 * r) * npow;
        g += term;
        if (abs(term) < eps) {
            converged = true;
            break;
        }
        npow *= inv_n2;
    }
    if (!converged) throw PrecisionError("euler_gamma: correction depth 60 exhausted");
    return round_to(g, digits);
}

std::vector<RealX> stieltjes_gammas(int nmax, int digits) {
    if (nmax < 0 || nmax > 16) throw RangeError("stieltjes_gammas: need 0 <= nmax <= 16");
    if (digits > kMaxDigits) throw PrecisionError("stieltjes_gammas: digits > 200 unsupported");
    ensure_tables();

    // n! / r^n amplifies node rounding; lift the working precision to cover it.
    double amplification = std::lgamma(nmax + 1.0) / std::log(10.0) + nmax * std::log10(2.0);
    int work = digits + 12 + static_cast<int>(std::ceil(amplification));

    auto g = [&](const ComplexX& s) -> ComplexX {
        ComplexX z = zeta_em(s, work);
        ComplexX pole = reciprocal(s - ComplexX(RealX(1), RealX(0)));
        return z - pole;
    };
    auto taylor = contour::taylor_coeffs_about_one(g, 0.5, 256, nmax, work);

    PrecisionGuard guard(work);
    std::vector<RealX> out;
    out.reserve(nmax + 1);
    RealX imag_tol = pow(RealX(10), 4 - digits);
    RealX factorial(1);
    for (int n = 0; n <= nmax; ++n) {
        if (n > 1) factorial *= n;
        const ComplexX& a = taylor.coeffs[n];
        if (abs(a.im) * factorial > imag_tol)
            throw PrecisionError("stieltjes_gammas: imaginary residual above tolerance");
        RealX value = factorial * a.re;
        if (n & 1) value = -value;
        out.push_back(round_to(value, digits));
    }
    return out;
}

RealX stieltjes_gamma(int n, int digits) {
    return stieltjes_gammas(n, digits).at(static_cast<size_t>(n));
}

namespace {
std::mutex constants_mutex;
std::map<int, double> zeta_cache;
}  // namespace

double zeta_double(int k) {
    if (k < 2) throw RangeError("zeta_double: k must be >= 2");
    std::lock_guard<std::mutex> lock(constants_mutex);
    auto it = zeta_cache.find(k);
    if (it != zeta_cache.end()) return it->second;
    double v = zeta_em(RealX(k), 25).convert_to<double>();
    zeta_cache.emplace(k, v);
    return v;
}

double inv_zeta_double(int k) { return 1.0 / zeta_double(k); }

}  // namespace kfree::zetacore
