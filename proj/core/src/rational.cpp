#include "gcalc/rational.hpp"

#include <stdexcept>
#include <vector>

namespace gcalc {

double to_double(const Rat& r) { return r.convert_to<double>(); }

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

std::string to_string(const Rat& r) {
  std::string out = numerator(r).str();
  if (denominator(r) != 1) out += "/" + denominator(r).str();
  return out;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int result = 1;
  for (int i = 0; i < k; ++i) {
    result *= (n - i);
    result /= (i + 1);
  }
  return result;
}

Int factorial(int n) {
  Int result = 1;
  for (int i = 2; i <= n; ++i) result *= i;
  return result;
}

int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

}  // namespace gcalc
