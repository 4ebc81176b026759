#include "kfree/bernoulli.hpp"

#include <array>
#include <vector>

#include "kfree/errors.hpp"

namespace kfree::zetacore {

namespace {

using Integer = boost::multiprecision::mpz_int;

std::vector<Rational> build_table(unsigned nmax) {
    std::vector<Rational> b(nmax + 1);
    b[0] = 1;
    for (unsigned n = 1; n <= nmax; ++n) {
        if (n > 1 && (n & 1)) {
            b[n] = 0;
            continue;
        }
        // C(n+1, j) built incrementally across the inner sum.
        Integer binom = 1;  // C(n+1, 0)
        Rational acc = 0;
        for (unsigned j = 0; j < n; ++j) {
            acc += Rational(binom) * b[j];
            binom = binom * (n + 1 - j) / (j + 1);
        }
        b[n] = -acc / Rational(n + 1);
    }
    return b;
}

}  // namespace

const Rational& bernoulli(unsigned n) {
    static const std::vector<Rational> table = build_table(kBernoulliMax);
    if (n >= table.size())
        throw PrecisionError("bernoulli: index exceeds precomputed table");
    return table[n];
}

RealX bernoulli_real(unsigned n, int digits) {
    const Rational& q = bernoulli(n);
    PrecisionGuard guard(digits);
    RealX num(numerator(q).str(), static_cast<unsigned>(digits));
    RealX den(denominator(q).str(), static_cast<unsigned>(digits));
    return num / den;
}

}  // namespace kfree::zetacore
