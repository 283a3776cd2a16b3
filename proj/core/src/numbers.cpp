#include "gcalc/numbers.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gcalc {

Rat bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli: n < 0");
  static std::vector<Rat> cache{Rat(1)};
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1.
  while ((int)cache.size() <= n) {
    int m = (int)cache.size();
    Rat acc = 0;
    for (int j = 0; j < m; ++j) acc += Rat(binomial(m + 1, j)) * cache[j];
    cache.push_back(-acc / Rat(m + 1));
  }
  return cache[n];
}

Rat script_bernoulli(int n) {
  if (n < 1) throw std::invalid_argument("script_bernoulli: n < 1");
  return bernoulli(n) / (Rat(2) * Rat(n) * Rat(factorial(n)));
}

double zeta_series(int n) {
  if (n < 2) throw std::invalid_argument("zeta_series: n < 2");
  const long long P = 100000;
  double s = 0.0;
  for (long long p = P; p >= 1; --p) s += std::pow((double)p, -n);
  // Euler-Maclaurin tail past P: integral + boundary + first corrections.
  double Pd = (double)P;
  double tail = std::pow(Pd, 1.0 - n) / (n - 1.0) - 0.5 * std::pow(Pd, (double)-n) +
                (n / 12.0) * std::pow(Pd, -(double)n - 1.0) -
                (n * (n + 1.0) * (n + 2.0) / 720.0) * std::pow(Pd, -(double)n - 3.0);
  return s + tail;
}

double zeta_partial_sum(int n, long long terms) {
  if (n < 2) throw std::invalid_argument("zeta_partial_sum: n < 2");
  double s = 0.0;
  for (long long p = terms; p >= 1; --p) s += std::pow((double)p, -n);
  return s;
}

}  // namespace gcalc
