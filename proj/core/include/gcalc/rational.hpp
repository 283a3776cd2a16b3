#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace gcalc {

// Exact rational scalar used by every symbolic module. Arbitrary precision:
// intermediate coefficients in operadic expansions overflow 64-bit fractions.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

inline int sgn(const Rat& r) { return r.sign(); }

double to_double(const Rat& r);

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& s);

// Renders as "p" or "p/q" with the sign on the numerator.
std::string to_string(const Rat& r);

Int binomial(int n, int k);
Int factorial(int n);

// Parity of a permutation given as a 0-based image vector; +1 or -1.
int permutation_sign(const std::vector<int>& p);

}  // namespace gcalc
