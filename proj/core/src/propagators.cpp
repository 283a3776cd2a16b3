#include "gcalc/propagators.hpp"

#include <cmath>
#include <stdexcept>

namespace gcalc::prop {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Coordinate partials of the four basic differences, order (x1, y1, x2, y2).
// A = z1 - z2, B = z1 - conj(z2), C = conj(z1) - z2, D = conj(z1) - conj(z2).
constexpr cplx I{0.0, 1.0};
const std::array<cplx, 4> kGradA{cplx(1), I, cplx(-1), -I};
const std::array<cplx, 4> kGradB{cplx(1), I, cplx(-1), I};
const std::array<cplx, 4> kGradC{cplx(1), -I, cplx(-1), -I};
const std::array<cplx, 4> kGradD{cplx(1), -I, cplx(-1), I};

// d Arg(w) = Im(conj(w) dw)/|w|^2, as a real covector.
void add_darg(std::array<cplx, 4>& acc, cplx w, const std::array<cplx, 4>& dw,
              double scale) {
  double n2 = std::norm(w);
  for (int c = 0; c < 4; ++c) acc[c] += scale * std::imag(std::conj(w) * dw[c]) / n2;
}

// (1/i) d log(w) = (1/i) dw / w.
void add_dlog_over_i(std::array<cplx, 4>& acc, cplx w, const std::array<cplx, 4>& dw,
                     double scale) {
  for (int c = 0; c < 4; ++c) acc[c] += scale * dw[c] / (I * w);
}

std::array<cplx, 4> kontsevich_gradient(cplx z1, cplx z2) {
  std::array<cplx, 4> g{};
  add_darg(g, z1 - z2, kGradA, 0.5);
  add_darg(g, z1 - std::conj(z2), kGradB, 0.5);
  add_darg(g, std::conj(z1) - z2, kGradC, -0.5);
  add_darg(g, std::conj(z1) - std::conj(z2), kGradD, -0.5);
  return g;
}

std::array<cplx, 4> swap_points(const std::array<cplx, 4>& g) {
  return {g[2], g[3], g[0], g[1]};
}

}  // namespace

Propagator parse_propagator(const std::string& name) {
  if (name == "kontsevich") return {PropName::Kontsevich, 1.0};
  if (name == "anti_kontsevich") return {PropName::AntiKontsevich, 0.0};
  if (name == "symmetrized") return {PropName::Symmetrized, 0.5};
  if (name == "half_k") return {PropName::HalfK, 1.0};
  if (name == "half_k_anti") return {PropName::HalfKAnti, 0.0};
  if (name == "volume_s1") return {PropName::VolumeS1, 0.5};
  if (name.rfind("family_t:", 0) == 0) {
    double t = std::stod(name.substr(9));
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("family_t needs t in [0,1]");
    return {PropName::FamilyT, t};
  }
  throw std::invalid_argument("unknown propagator: " + name);
}

std::string to_string(const Propagator& p) {
  switch (p.name) {
    case PropName::Kontsevich: return "kontsevich";
    case PropName::AntiKontsevich: return "anti_kontsevich";
    case PropName::Symmetrized: return "symmetrized";
    case PropName::HalfK: return "half_k";
    case PropName::HalfKAnti: return "half_k_anti";
    case PropName::VolumeS1: return "volume_s1";
    case PropName::FamilyT: return "family_t:" + std::to_string(p.t);
  }
  return "?";
}

cplx ConfigurationPoint::x_center() const {
  double xc = 0;
  for (cplx p : z) xc += p.real();
  return cplx(xc / (double)z.size(), 0.0);
}

cplx ConfigurationPoint::z_min() const {
  double ymin = z[0].imag();
  for (cplx p : z) ymin = std::min(ymin, p.imag());
  return x_center() + cplx(0.0, ymin);
}

std::optional<int> ConfigurationPoint::argmin_y() const {
  int best = 0;
  for (int k = 1; k < (int)z.size(); ++k)
    if (z[k].imag() < z[best].imag()) best = k;
  for (int k = 0; k < (int)z.size(); ++k)
    if (k != best && z[k].imag() == z[best].imag()) return std::nullopt;
  return best;
}

bool ConfigurationPoint::off_seams() const {
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j) {
      if (z[i] == z[j]) return false;
      if (z[i].imag() == z[j].imag()) return false;
    }
  return true;
}

cplx forgetful_pi(const ConfigurationPoint& p, int i, int j) {
  if (i == j) throw std::invalid_argument("forgetful_pi: i == j");
  cplx d = p.z[i - 1] - p.z[j - 1];
  double r = std::abs(d);
  if (r == 0.0) throw std::invalid_argument("forgetful_pi: coincident points");
  return d / r;
}

std::optional<std::pair<cplx, cplx>> renormalized_fp(const ConfigurationPoint& p, int i,
                                                     int j) {
  if (i == j) throw std::invalid_argument("renormalized_fp: i == j");
  cplx zi = p.z[i - 1], zj = p.z[j - 1];
  if (zi.imag() == zj.imag()) return std::nullopt;
  cplx zm = p.z_min();
  if (zi.imag() > zj.imag()) return std::make_pair(zi - zj + zm, zm);
  return std::make_pair(zm, zj - zi + zm);
}

std::array<cplx, 4> form_gradient(const Propagator& w, cplx z1, cplx z2) {
  std::array<cplx, 4> g{};
  switch (w.name) {
    case PropName::Kontsevich:
      return kontsevich_gradient(z1, z2);
    case PropName::AntiKontsevich:
      return swap_points(kontsevich_gradient(z2, z1));
    case PropName::Symmetrized:
    case PropName::VolumeS1:
      add_darg(g, z1 - z2, kGradA, 1.0);
      return g;
    case PropName::FamilyT: {
      auto gk = kontsevich_gradient(z1, z2);
      auto ga = swap_points(kontsevich_gradient(z2, z1));
      for (int c = 0; c < 4; ++c) g[c] = w.t * gk[c] + (1.0 - w.t) * ga[c];
      return g;
    }
    case PropName::HalfK:
      add_dlog_over_i(g, z1 - z2, kGradA, 1.0);
      add_dlog_over_i(g, std::conj(z1) - z2, kGradC, -1.0);
      return g;
    case PropName::HalfKAnti:
      add_dlog_over_i(g, z1 - z2, kGradA, 1.0);
      add_dlog_over_i(g, z1 - std::conj(z2), kGradB, -1.0);
      return g;
  }
  throw std::logic_error("unhandled propagator");
}

double CircleForm::density(double u) const {
  double s = std::sin(u);
  return s > 0.0 ? upper : lower;
}

double CircleForm::circle_integral(long long nodes) const {
  if (singular) throw std::invalid_argument("circle_integral of a singular restriction");
  double h = 2.0 * kPi / (double)nodes;
  double sum = 0.0;
  for (long long k = 0; k < nodes; ++k) sum += density((k + 0.5) * h) * h;
  return sum;
}

CircleForm boundary_restriction(const Propagator& w, Side side) {
  if (side == Side::Inner) {
    if (w.is_singular()) return CircleForm{true, 0.0, 0.0};
    // Every member of the Kontsevich family restricts to d Arg(z1 - z2) at
    // the collision circle.
    return CircleForm{false, 1.0, 1.0};
  }
  switch (w.name) {
    case PropName::Symmetrized:
    case PropName::VolumeS1:
      return CircleForm{false, 1.0, 1.0};
    case PropName::Kontsevich:
    case PropName::HalfK:
      // The angle doubles on the arc where the first point escapes upward and
      // freezes on the other lid.
      return CircleForm{false, 2.0, 0.0};
    case PropName::AntiKontsevich:
    case PropName::HalfKAnti:
      return CircleForm{false, 0.0, 2.0};
    case PropName::FamilyT:
      return CircleForm{false, 2.0 * w.t, 2.0 * (1.0 - w.t)};
  }
  throw std::logic_error("unhandled propagator");
}

CircleForm homogeneous_circle_form() { return CircleForm{false, 1.0, 1.0}; }

std::optional<std::vector<cplx>> pullback_halfplane(const Propagator& w, MapMode mode,
                                                    const ConfigurationPoint& p, int i,
                                                    int j) {
  const int n = (int)p.z.size();
  std::vector<cplx> row(2 * n, cplx(0.0));
  if (mode == MapMode::Plain) {
    cplx zi = p.z[i - 1], zj = p.z[j - 1];
    if (zi == zj) return std::nullopt;
    auto g = form_gradient(w, zi, zj);
    row[2 * (i - 1)] += g[0];
    row[2 * (i - 1) + 1] += g[1];
    row[2 * (j - 1)] += g[2];
    row[2 * (j - 1) + 1] += g[3];
    return row;
  }
  auto am = p.argmin_y();
  if (!am) return std::nullopt;
  auto pair = renormalized_fp(p, i, j);
  if (!pair) return std::nullopt;
  auto [w1, w2] = *pair;
  if (w1 == w2) return std::nullopt;  // collided image pair
  auto g = form_gradient(w, w1, w2);
  const bool i_above = p.z[i - 1].imag() > p.z[j - 1].imag();
  const double inv_n = 1.0 / (double)n;
  for (int k = 0; k < n; ++k) {
    double dk_i = (k == i - 1) ? 1.0 : 0.0;
    double dk_j = (k == j - 1) ? 1.0 : 0.0;
    double dk_m = (k == *am) ? 1.0 : 0.0;
    // Both components of the image pair move with z_min; the difference part
    // rides on z_i - z_j with the sign of the case split.
    double diff = i_above ? dk_i - dk_j : dk_j - dk_i;
    cplx gdiff = i_above ? g[0] : g[2];
    cplx gdiff_y = i_above ? g[1] : g[3];
    row[2 * k] = gdiff * diff + (g[0] + g[2]) * inv_n;
    row[2 * k + 1] = gdiff_y * diff + (g[1] + g[3]) * dk_m;
  }
  return row;
}

std::optional<std::vector<double>> pullback_circle(const CircleForm& rho,
                                                   const ConfigurationPoint& p, int i,
                                                   int j) {
  if (rho.singular) throw std::invalid_argument("pullback of a singular restriction");
  const int n = (int)p.z.size();
  cplx d = p.z[i - 1] - p.z[j - 1];
  double n2 = std::norm(d);
  if (n2 == 0.0) return std::nullopt;
  double scale = d.imag() > 0.0 ? rho.upper : rho.lower;
  std::vector<double> row(2 * n, 0.0);
  // d Arg(z_i - z_j) = (-dy * dx_i ... ) -- components Im(conj(d) dd)/|d|^2.
  row[2 * (i - 1)] = scale * (-d.imag()) / n2;
  row[2 * (i - 1) + 1] = scale * d.real() / n2;
  row[2 * (j - 1)] = scale * d.imag() / n2;
  row[2 * (j - 1) + 1] = scale * (-d.real()) / n2;
  return row;
}

}  // namespace gcalc::prop
