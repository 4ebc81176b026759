#include "kfree/contour.hpp"

#include "kfree/errors.hpp"

namespace kfree::contour {

namespace {

// cos/sin of 2*pi*j/M for j = 0..M-1, built from one quadrant so that the
// axis nodes (j = 0, M/4, M/2, 3M/4) are exact and conjugate pairs match
// bit for bit.
void build_trig_tables(int M, int digits, std::vector<RealX>& cs, std::vector<RealX>& sn) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    PrecisionGuard guard(digits);
    cs.assign(M, RealX(0));
    sn.assign(M, RealX(0));
    RealX two_pi = 8 * boost::multiprecision::atan(RealX(1));
    int q = M / 4;
    for (int j = 0; j <= q; ++j) {
        RealX theta = two_pi * j / M;
        cs[j] = cos(theta);
        sn[j] = sin(theta);
    }
    cs[0] = 1;
    sn[0] = 0;
    if (4 * q == M) {
        cs[q] = 0;
        sn[q] = 1;
    }
    for (int j = q + 1; j <= M / 2; ++j) {
        cs[j] = -cs[M / 2 - j];
        sn[j] = sn[M / 2 - j];
    }
    for (int j = M / 2 + 1; j < M; ++j) {
        cs[j] = cs[M - j];
        sn[j] = -sn[M - j];
    }
}

}  // namespace

TaylorCoeffs taylor_coeffs_about_one(
    const std::function<ComplexX(const ComplexX&)>& f, double radius, int nodes,
    int ncoeffs, int digits) {
    if (nodes < 4 || (nodes & (nodes - 1)) != 0)
        throw DomainError("contour: node count must be a power of two >= 4");
    if (!(radius > 0))
        throw DomainError("contour: radius must be positive");

    PrecisionGuard guard(digits);
    const int M = nodes;
    std::vector<RealX> cs, sn;
    build_trig_tables(M, digits, cs, sn);

    RealX r = make_real(radius, digits);
    std::vector<ComplexX> w;
    w.reserve(M);
    for (int j = 0; j < M; ++j) {
        ComplexX s{RealX(1) + r * cs[j], r * sn[j]};
        w.push_back(f(s));
    }

    TaylorCoeffs out;
    out.coeffs.reserve(ncoeffs + 1);
    RealX rn(1);
    for (int n = 0; n <= ncoeffs; ++n) {
        RealX re(0), im(0);
        for (int j = 0; j < M; ++j) {
            int t = static_cast<int>((static_cast<long long>(n) * j) % M);
            // e^{-i n theta_j} = cos - i sin at index t
            re += w[j].re * cs[t] + w[j].im * sn[t];
            im += w[j].im * cs[t] - w[j].re * sn[t];
        }
        RealX scale = rn * M;
        out.coeffs.emplace_back(re / scale, im / scale);
        rn *= r;
    }
    return out;
}

}  // namespace kfree::contour
