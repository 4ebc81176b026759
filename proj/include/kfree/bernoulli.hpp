#pragma once

#include <boost/multiprecision/gmp.hpp>

#include "kfree/realx.hpp"

namespace kfree::zetacore {

using Rational = boost::multiprecision::mpq_rational;

// Highest Bernoulli index kept in the table. Euler-Maclaurin correction depth
// is capped at 60 (pairs of indices), so B_160 leaves headroom.
inline constexpr unsigned kBernoulliMax = 160;

// B_n as an exact rational, n <= kBernoulliMax. The table is built once on
// first use (thread-safe magic static) by the defining recurrence
// sum_{j<=n} C(n+1, j) B_j = 0.
const Rational& bernoulli(unsigned n);

RealX bernoulli_real(unsigned n, int digits);

}  // namespace kfree::zetacore
