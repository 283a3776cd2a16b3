#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "gcalc/graphs.hpp"
#include "gcalc/propagators.hpp"
#include "gcalc/rational.hpp"

namespace gcalc::mc {

using cplx = std::complex<double>;

struct WeightEstimate {
  cplx value{0.0, 0.0};
  double std_error = 0.0;
  long long samples = 0;
  uint64_t seed = 0;
  int shards = 0;
  long long rejected = 0;
  bool analytic = false;

  const char* method() const { return analytic ? "analytic" : "mc"; }
};

struct McOptions {
  long long samples = 1000000;
  uint64_t seed = 1;
  int shards = 32;       // >= 16; also the error-bar batch count
  int threads = 0;       // 0 = hardware concurrency
  int pin_vertex = 1;    // which vertex the gauge slice pins (1-based)
  bool antithetic = false;
  bool stratify_theta = false;  // C_n charts only
  bool experimental_singular = false;  // unlock the half_k pair
};

// Weight over the plane configuration space: gauge z_pin = 0, z_next = e^{i
// theta}; needs #E = 2n-3. `omega_circle` is a boundary-restricted 1-form on
// the circle.
WeightEstimate mc_weight_Cn(const graphs::DecoratedGraph& g,
                            const prop::CircleForm& omega_circle, const McOptions& opt);

// Weight over the upper-half-plane space: gauge z_pin = i; needs #E = 2n-2.
WeightEstimate mc_weight_Cn0(const graphs::DecoratedGraph& g, const prop::Propagator& w,
                             prop::MapMode mode, const McOptions& opt);

// Exact weights of the six 4-vertex shapes: 1/12 for the three nonvanishing
// ones, 0 for the rest; the 1/12 comes from the one-dimensional boundary-angle
// integral evaluated in closed form. The sign is relative to the stored edge
// order. nullopt for graphs outside the table.
std::optional<Rat> analytic_weight_appendix4(const graphs::DecoratedGraph& g);

enum class WheelVariant { HalfK, BernoulliEven };

// Closed-form wheel weights: (-1)^{n(n-1)/2} zeta(n)/(2 pi i)^n, and the
// Bernoulli form -(-1)^{n(n-1)/2} B_n/(2 n!) for even n.
cplx wheel_weight_closed_form(int n, WheelVariant variant);
Rat wheel_weight_bernoulli_exact(int n);  // n even

// Monte Carlo for the unit-cube integral of 1/(1 - x_1...x_n); equals zeta(n).
WeightEstimate zeta_box_integral(int n, const McOptions& opt);
double zeta_box_series(int n);  // the series oracle

// Exact weight tables keyed by canonical (sorted-edge) graph strings; lookups
// of arbitrary orderings are sign-adjusted. Missing entries read as zero when
// `total` is set and throw otherwise.
class ExactTable {
 public:
  void set(const graphs::DecoratedGraph& g, const Rat& value);
  Rat lookup(const graphs::DecoratedGraph& g) const;
  // Whether any stored entry has the given vertex count (lets consumers skip
  // whole enumeration levels of an otherwise total table).
  bool has_arity(int n) const;
  bool total = true;

 private:
  std::map<std::string, Rat> entries_;
};

// One-sum Stokes identity on the closed configuration space: for a graph with
// 2n-4 edges,  sum over admissible A of (-1)^{sigma_A} c(G_A) c(G/G_A).
Rat stokes_residual_closed(const graphs::DecoratedGraph& g, const ExactTable& c);

// Two-sum identity on the half-plane space: for a graph with 2n-3 edges,
//   - sum_{A, #A>=2, G_A in G_{a,2a-3}} (-1)^{sigma_A} c_in(G_A) C(G/G_A)
//   + sum_{partitions, blocks in G_{b,2b-2}} (-1)^{sigma} c_out(G/blocks)
//         prod_i C(G_{B_i}),
// with C(point) = 1. Exact-table version.
Rat stokes_residual_morphism(const graphs::DecoratedGraph& g, const ExactTable& c_in,
                             const ExactTable& c_out, const ExactTable& C);

}  // namespace gcalc::mc
