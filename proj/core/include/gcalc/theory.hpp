#pragma once

#include <functional>
#include <vector>

#include "gcalc/graphs.hpp"
#include "gcalc/integrator.hpp"
#include "gcalc/polyfields.hpp"

namespace gcalc::theory {

// Formal hbar series of polyvector fields; index = hbar power. The length
// fixes the truncation order (size = order + 1).
using HSeries = std::vector<poly::Poly>;

HSeries hseries(const poly::Poly& constant_term, int order);
HSeries series_add(const HSeries& a, const HSeries& b);
HSeries series_schouten(const HSeries& a, const HSeries& b);
bool series_is_zero(const HSeries& a);
// Every retained term has total degree 2.
bool is_maurer_cartan_degree(const HSeries& a);

// ---- analytic weight tables ----

// The d Arg theory: weight 1 on both single-edge two-vertex graphs, zero
// elsewhere (Kontsevich vanishing).
mc::ExactTable omega0_c_table();

// Weights of the outer restriction of the Kontsevich propagator: the omega0
// entries at n = 2, zero on G_{3,3}, and the three nonvanishing 4-vertex
// shapes at 1/12 across all vertex labelings.
mc::ExactTable kontsevich_outer_c_table();

// ---- homotopy structures ----

struct HomotopyStructure {
  mc::ExactTable table;  // weights on G_{n,2n-3}
  int max_n = 2;
  bool symmetric = false;

  // mu_n with n = args.size(); zero for n = 1 or n > max_n.
  poly::Poly mu(const std::vector<poly::Poly>& args) const;
  // Classes with nonzero weight at arity n.
  std::vector<graphs::DecoratedGraph> support(int n) const;
};

HomotopyStructure build_mu(mc::ExactTable table, int max_n);

struct MorphismF {
  mc::ExactTable table;  // weights on G_{n,2n-2}
  int max_n = 1;

  // F_1 = identity; higher components are weighted graph operators.
  poly::Poly apply(const std::vector<poly::Poly>& args) const;
};

MorphismF build_morphism(mc::ExactTable C_table, int max_n);

// F(alpha) = alpha + sum_{n>=2} hbar^{n-1} sum_{unlabeled G_{n,2n-2}}
// (C_G / #Aut G) Phi_G(alpha^n), truncated at hbar^order.
HSeries transform_mc(const MorphismF& F, const HSeries& alpha, int order);

// ---- wheels ----

// The closed-form wheel operator: the printed n-fold contraction
//   -(-1)^{n(n-1)/2} (1/2) sum d^n a^{ij}/dx^{k_1..k_n}
//        prod_m d a^{k_m l_m}/dx^{l_{m+1}}  (psi_i psi_j),
// equal to Phi_{w_n}(a, ..., a) for a bivector a.
poly::Poly wheel_contraction(const poly::Poly& bivector, int n);

// alpha + sum_n hbar^n (coeff(n)/n) * wheel_contraction(alpha, n).
HSeries wheel_series(const poly::Poly& bivector, const std::function<Rat(int)>& coeff,
                     int order);

// ---- Duflo ----

enum class DufloVariant { Bernoulli, Zeta };

// Exponent coefficient of hbar^n Trace(ad^n) in the printed transforms:
// B_n/(2 n n!) for the Bernoulli variant, zeta(n)/(n (2 pi i)^n) for the zeta
// variant; both exact rationals on even n, zero on odd n.
Rat duflo_exponent_coefficient(DufloVariant v, int n);

// gamma2 + exp(sum_n e_n hbar^n T_n) gamma0 via the ad-matrix contraction
// T_n (the trace-series route). gamma2 must be a linear bivector commuting
// with gamma0 under the Schouten bracket.
HSeries duflo_transform(const poly::Poly& gamma2, const poly::Poly& gamma0,
                        DufloVariant v, int order);

// Same transform through Phi on actual wheel graphs; the independent route.
HSeries duflo_wheel_route(const poly::Poly& gamma2, const poly::Poly& gamma0,
                          DufloVariant v, int order);

// ---- tetrahedron flow ----

// The printed degree-3 contraction of a bivector with itself (and, with the
// flag, the 4/3-weighted second summand). All-even grading only.
poly::Poly tetrahedron_flow(const poly::Poly& bivector, bool include_second_term);

// Component matrix a^{ij} = d/dpsi_j d/dpsi_i P of a bivector; throws unless
// P is psi-degree 2 with an all-even grading.
std::vector<std::vector<poly::Poly>> bivector_components(const poly::Poly& p);

}  // namespace gcalc::theory
