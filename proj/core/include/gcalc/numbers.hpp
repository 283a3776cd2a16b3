#pragma once

#include "gcalc/rational.hpp"

namespace gcalc {

// Bernoulli number B_n (B_1 = -1/2), exact, via the defining recurrence.
Rat bernoulli(int n);

// scriptB(n) = B_n / (2 n n!), the wheel-weight coefficient for even n.
Rat script_bernoulli(int n);

// zeta(n) for integer n >= 2 by partial sums with an Euler-Maclaurin tail;
// absolute error well below 1e-14.
double zeta_series(int n);

// Plain partial sum  sum_{p=1}^{terms} p^{-n}; the low-tech oracle.
double zeta_partial_sum(int n, long long terms);

}  // namespace gcalc
