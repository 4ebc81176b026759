#pragma once

#include "kfree/realx.hpp"

namespace kfree {

// Extended-precision complex scalar: re and im share one precision.
struct ComplexX {
    RealX re;
    RealX im;

    ComplexX() = default;
    ComplexX(RealX r, RealX i) : re(std::move(r)), im(std::move(i)) {}
    explicit ComplexX(RealX r) : re(std::move(r)), im(0) { im.precision(re.precision()); }
    ComplexX(double r, double i, int digits)
        : re(make_real(r, digits)), im(make_real(i, digits)) {}

    int precision() const { return precision_digits(re); }
    bool is_real() const { return im.is_zero(); }
};

inline ComplexX operator+(const ComplexX& a, const ComplexX& b) {
    return {a.re + b.re, a.im + b.im};
}
inline ComplexX operator-(const ComplexX& a, const ComplexX& b) {
    return {a.re - b.re, a.im - b.im};
}
inline ComplexX operator-(const ComplexX& a) { return {-a.re, -a.im}; }
inline ComplexX operator*(const ComplexX& a, const ComplexX& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexX operator*(const RealX& a, const ComplexX& b) {
    return {a * b.re, a * b.im};
}
inline ComplexX operator/(const ComplexX& a, const ComplexX& b) {
    RealX d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline ComplexX reciprocal(const ComplexX& z) {
    RealX d = z.re * z.re + z.im * z.im;
    return {z.re / d, -z.im / d};
}
inline ComplexX conj(const ComplexX& z) { return {z.re, -z.im}; }

inline RealX abs(const ComplexX& z) {
    using boost::multiprecision::hypot;
    return hypot(z.re, z.im);
}

// base^z for real base > 0: exp(z * log base) split into magnitude and phase.
inline ComplexX pow_positive_base(const RealX& base, const ComplexX& z) {
    using boost::multiprecision::cos;
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    using boost::multiprecision::sin;
    RealX lb = log(base);
    RealX mag = exp(z.re * lb);
    RealX theta = z.im * lb;
    return {mag * cos(theta), mag * sin(theta)};
}

}  // namespace kfree
