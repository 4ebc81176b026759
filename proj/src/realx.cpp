#include "kfree/realx.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <sstream>

namespace kfree {

bool agrees_to_digits(const RealX& a, const RealX& b, int digits) {
    using boost::multiprecision::abs;
    using boost::multiprecision::pow;
    int work = std::max(precision_digits(a), precision_digits(b));
    PrecisionGuard guard(work);
    RealX diff = abs(a - b);
    RealX scale = abs(a);
    if (abs(b) > scale) scale = abs(b);
    if (scale < 1) scale = 1;
    return diff <= scale * pow(RealX(10), -digits);
}

std::string to_fixed_truncated(const RealX& v, int decimals) {
    using Integer = boost::multiprecision::mpz_int;
    PrecisionGuard guard(precision_digits(v) + 10);
    RealX scaled = v;
    for (int i = 0; i < decimals; ++i) scaled *= 10;
    Integer z = scaled.convert_to<Integer>();  // truncates toward zero
    bool neg = z < 0;
    if (neg) z = -z;
    std::string digits = z.str();
    if (static_cast<int>(digits.size()) <= decimals)
        digits.insert(0, static_cast<size_t>(decimals + 1 - digits.size()), '0');
    digits.insert(digits.size() - static_cast<size_t>(decimals), ".");
    if (neg) digits.insert(0, "-");
    return digits;
}

std::string to_scientific(const RealX& v, int digits) {
    return v.str(digits, std::ios_base::scientific);
}

}  // namespace kfree
