#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "gcalc/graphs.hpp"
#include "gcalc/rational.hpp"

namespace gcalc::poly {

// Z-grading of the coordinate space: |x^a| = degrees[a-1], |psi_a| = 1 - |x^a|.
struct Grading {
  int d = 0;
  std::vector<int> degrees;  // size d; empty means all zero

  explicit Grading(int dim = 0, std::vector<int> deg = {});
  int xdeg(int a) const { return degrees[a - 1]; }
  int psideg(int a) const { return 1 - degrees[a - 1]; }
  bool operator==(const Grading& o) const { return d == o.d && degrees == o.degrees; }
};

// Free supercommutative algebra on `copies` disjoint copies of x^1..x^d,
// psi_1..psi_d. Generators are globally ordered copy-major, x's before psi's;
// monomials are exponent vectors in that order with Koszul signs applied
// eagerly, so equality of polynomials is a map comparison.
struct Algebra {
  Grading grading;
  int copies = 1;

  int gens() const { return copies * 2 * grading.d; }
  int xgen(int copy, int a) const { return copy * 2 * grading.d + (a - 1); }
  int psigen(int copy, int a) const { return copy * 2 * grading.d + grading.d + (a - 1); }
  bool is_psi(int gen) const { return gen % (2 * grading.d) >= grading.d; }
  int coordinate_index(int gen) const { return gen % grading.d + 1; }  // 1..d
  int degree(int gen) const {
    int a = coordinate_index(gen);
    return is_psi(gen) ? grading.psideg(a) : grading.xdeg(a);
  }
  int parity(int gen) const { return ((degree(gen) % 2) + 2) % 2; }
  bool operator==(const Algebra& o) const {
    return grading == o.grading && copies == o.copies;
  }
};

using Mono = std::vector<uint8_t>;

class Poly {
 public:
  explicit Poly(Algebra alg = Algebra()) : alg_(std::move(alg)) {}

  const Algebra& algebra() const { return alg_; }
  const std::map<Mono, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Mono& m, const Rat& c);

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  Poly operator-() const;
  bool operator==(const Poly& o) const { return alg_ == o.alg_ && terms_ == o.terms_; }

  // Total degree of a monomial under the grading.
  int term_degree(const Mono& m) const;
  // Degree if homogeneous (zero polynomial reports 0 with homogeneous=true).
  bool is_homogeneous(int* degree = nullptr) const;
  // Splits into homogeneous pieces keyed by degree.
  std::map<int, Poly> homogeneous_parts() const;

 private:
  Algebra alg_;
  std::map<Mono, Rat> terms_;
};

Poly zero(const Algebra& alg);
Poly constant(const Algebra& alg, const Rat& c);
Poly coordinate(const Algebra& alg, int a, int copy = 0);
Poly psi(const Algebra& alg, int a, int copy = 0);

Poly mul(const Poly& a, const Poly& b);
// Left partial derivative with respect to the given generator.
Poly derivative(const Poly& p, int gen);
Poly derivative_x(const Poly& p, int a, int copy = 0);
Poly derivative_psi(const Poly& p, int a, int copy = 0);

// Injects a single-copy polynomial into copy `copy` of an n-copy algebra.
Poly embed(const Poly& p, const Algebra& big, int copy);
// Sets all copies equal: the algebra map x_(c)^a -> x^a, psi_(c)a -> psi_a.
Poly identify_copies(const Poly& p);

// ---- the operators of the calculus ----

// Delta = sum_a (-1)^{|x^a|} d^2/(dx^a dpsi_a); odd, squares to zero.
Poly delta(const Poly& p);

// [g1 . g2] = Delta(g1 g2) - Delta(g1) g2 - (-1)^{|g1|} g1 Delta(g2),
// extended bilinearly over inhomogeneous inputs.
Poly schouten(const Poly& g1, const Poly& g2);

// Phi_Gamma: n disjoint copies, one edge operator per edge applied in the
// stored orientation order, then all copies identified.
Poly phi(const graphs::DecoratedGraph& g, const std::vector<Poly>& args);

// Symmetrized operator Phi^s_Gamma for an undirected loopless graph: averages
// over all vertex labelings with the two-sided edge contraction.
Poly phi_sym(const graphs::DecoratedGraph& g, const std::vector<Poly>& args);

// LHS - RHS of the subgraph composition identity:
//   Phi_{G1}(g_1,...,Phi_{G2}(g_A),...) = sum over gluings of +-Phi_G.
// Zero on success. A is the (sorted ascending) subset of [n] fed to G2.
Poly composition_identity_check(const graphs::DecoratedGraph& g1,
                                const graphs::DecoratedGraph& g2,
                                const std::vector<int>& A,
                                const std::vector<Poly>& args);

// ---- text format ----

// Sum of terms `c*x1^k1*...*psi1*psi3`, rationals as p/q. Single copy only.
std::string to_string(const Poly& p);
Poly parse_poly(const Algebra& alg, const std::string& text);

// Uniform random polynomial for property tests: up to `nterms` monomials of
// x-degree <= max_x and psi-degree <= max_psi per variable slot.
Poly random_poly(const Algebra& alg, int nterms, int max_x, int max_psi,
                 std::mt19937_64& rng);
// Random polynomial homogeneous of the given total degree (all-even gradings:
// degree = number of psi factors).
Poly random_homogeneous(const Algebra& alg, int degree, int nterms, int max_x,
                        std::mt19937_64& rng);

}  // namespace gcalc::poly
