#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace gcalc::prop {

using cplx = std::complex<double>;

// Named angle-function 1-forms on the two-point configuration space of the
// upper half plane. The half_k pair is complex-valued and singular at the
// collision strata.
enum class PropName {
  Kontsevich,
  AntiKontsevich,
  Symmetrized,
  FamilyT,
  HalfK,
  HalfKAnti,
  VolumeS1,
};

struct Propagator {
  PropName name = PropName::Kontsevich;
  double t = 1.0;  // family_t parameter in [0,1]

  bool is_singular() const {
    return name == PropName::HalfK || name == PropName::HalfKAnti;
  }
  bool is_complex() const { return is_singular(); }
};

// Accepts kontsevich, anti_kontsevich, symmetrized, family_t:<t>, half_k,
// half_k_anti, volume_s1 (plus kontsevich-outer style suffixes handled by the
// CLI, not here).
Propagator parse_propagator(const std::string& name);
std::string to_string(const Propagator& p);

// n points in the upper half plane (C_{n,0}) or the plane (C_n).
struct ConfigurationPoint {
  std::vector<cplx> z;

  cplx x_center() const;
  // z_min = x_c + i * min_k y_k.
  cplx z_min() const;
  // Index (0-based) of the unique y-argmin, or nullopt on a tie.
  std::optional<int> argmin_y() const;
  // True when no two points collide, no y-coordinates tie, and the argmin is
  // unique -- the off-seam condition for the renormalized map.
  bool off_seams() const;
};

// pi_ij: the unit complex number (z_i - z_j)/|z_i - z_j|; i, j are 1-based.
cplx forgetful_pi(const ConfigurationPoint& p, int i, int j);

// The renormalized forgetful map: the two-point configuration
//   (z_i - z_j + z_min, z_min)       if y_i >= y_j
//   (z_min, z_j - z_i + z_min)       if y_i <  y_j.
// nullopt on the y_i = y_j seam.
std::optional<std::pair<cplx, cplx>> renormalized_fp(const ConfigurationPoint& p, int i,
                                                     int j);

// Covector of the propagator 1-form at a two-point configuration, components
// with respect to (x1, y1, x2, y2). Complex for the half_k pair.
std::array<cplx, 4> form_gradient(const Propagator& w, cplx z1, cplx z2);

// Boundary restriction of a propagator: a 1-form rho(u) du on the circle,
// piecewise constant on the upper arc (u in (0,pi), first point above the
// second) and the lower arc. The half_k pair does not extend to the inner
// circle.
struct CircleForm {
  bool singular = false;
  double upper = 1.0;  // density against du on Arg in (0, pi)
  double lower = 1.0;

  double density(double u) const;
  // Trapezoid integral over the circle with `nodes` points (normalization
  // checks want 2*pi).
  double circle_integral(long long nodes = 100000) const;
};

enum class Side { Inner, Outer };

CircleForm boundary_restriction(const Propagator& w, Side side);

// The homogeneous volume form d Arg(z1 - z2), as a circle form.
CircleForm homogeneous_circle_form();

enum class MapMode { Plain, Renormalized };

// Row of partial derivatives of the propagator pulled back through the plain
// or renormalized forgetful map, with respect to all 2n real coordinates
// (x_1, y_1, ..., x_n, y_n). nullopt when the configuration sits on a seam.
std::optional<std::vector<cplx>> pullback_halfplane(const Propagator& w, MapMode mode,
                                                    const ConfigurationPoint& p, int i,
                                                    int j);

// Row of partials of rho(u) du pulled back through pi_ij on plane
// configurations (u = Arg(z_i - z_j)); nullopt on collision.
std::optional<std::vector<double>> pullback_circle(const CircleForm& rho,
                                                   const ConfigurationPoint& p, int i,
                                                   int j);

}  // namespace gcalc::prop
