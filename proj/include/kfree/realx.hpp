#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace kfree {

// Extended-precision real scalar. Precision is carried per value in decimal
// digits; all arithmetic rounds to nearest (the MPFR default). Binary
// operations produce results at the larger operand precision, so routines
// set a working precision on entry and construct every operand at it.
using RealX = boost::multiprecision::mpfr_float;

inline int precision_digits(const RealX& v) { return static_cast<int>(v.precision()); }

// Scoped default precision for temporaries and integer-literal promotion.
class PrecisionGuard {
  public:
    explicit PrecisionGuard(int digits) : saved_(RealX::default_precision()) {
        RealX::default_precision(static_cast<unsigned>(digits));
    }
    ~PrecisionGuard() { RealX::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  private:
    unsigned saved_;
};

inline RealX make_real(double v, int digits) {
    RealX r(0, static_cast<unsigned>(digits));
    r = v;
    r.precision(static_cast<unsigned>(digits));
    return r;
}

inline RealX make_real(const char* decimal, int digits) {
    RealX r(decimal, static_cast<unsigned>(digits));
    return r;
}

// Narrows (or widens) a value to exactly `digits` decimal digits.
inline RealX round_to(const RealX& v, int digits) {
    RealX r(v);
    r.precision(static_cast<unsigned>(digits));
    return r;
}

// True iff a and b agree to `digits` significant digits:
// |a - b| <= 10^-digits * max(|a|, |b|, 1).
bool agrees_to_digits(const RealX& a, const RealX& b, int digits);

// Fixed-point rendering with `decimals` digits after the point, truncated
// toward zero (matching printed reference tables).
std::string to_fixed_truncated(const RealX& v, int decimals);

// Scientific rendering at the value's own precision.
std::string to_scientific(const RealX& v, int digits);

}  // namespace kfree
