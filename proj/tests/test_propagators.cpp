#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gcalc/propagators.hpp"

using namespace gcalc;
using prop::cplx;
using prop::ConfigurationPoint;

namespace {

constexpr double kPi = 3.14159265358979323846;

ConfigurationPoint random_config(int n, std::mt19937_64& rng, bool halfplane) {
  std::uniform_real_distribution<double> xd(-2.0, 2.0), yd(0.2, 2.5);
  ConfigurationPoint p;
  while (true) {
    p.z.clear();
    for (int i = 0; i < n; ++i)
      p.z.push_back({xd(rng), halfplane ? yd(rng) : xd(rng)});
    bool ok = true;
    for (size_t i = 0; i < p.z.size() && ok; ++i)
      for (size_t j = i + 1; j < p.z.size(); ++j) {
        if (std::abs(p.z[i] - p.z[j]) < 0.15) ok = false;
        if (halfplane && std::abs(p.z[i].imag() - p.z[j].imag()) < 0.05) ok = false;
      }
    if (ok) return p;
  }
}

// Finite-difference oracle: evaluates the mapped angle through branch-safe
// ratios, independent of the analytic gradient path.
cplx fd_row_entry(const prop::Propagator& w, prop::MapMode mode,
                  const ConfigurationPoint& p, int i, int j, int coord, double h) {
  auto mapped_pair = [&](const ConfigurationPoint& q) -> std::pair<cplx, cplx> {
    if (mode == prop::MapMode::Plain) return {q.z[i - 1], q.z[j - 1]};
    auto pair = prop::renormalized_fp(q, i, j);
    REQUIRE(pair.has_value());
    return *pair;
  };
  ConfigurationPoint plus = p, minus = p;
  auto bump = [&](ConfigurationPoint& q, double delta) {
    int vertex = coord / 2;
    cplx z = q.z[vertex];
    q.z[vertex] = coord % 2 ? cplx(z.real(), z.imag() + delta)
                            : cplx(z.real() + delta, z.imag());
  };
  bump(plus, h);
  bump(minus, -h);
  auto [a1, a2] = mapped_pair(plus);
  auto [b1, b2] = mapped_pair(minus);
  auto darg = [&](cplx num_p, cplx num_m) {
    return std::arg(num_p / num_m) / (2.0 * h);
  };
  auto dlog_over_i = [&](cplx num_p, cplx num_m) {
    return std::log(num_p / num_m) / (cplx(0.0, 1.0) * 2.0 * h);
  };
  switch (w.name) {
    case prop::PropName::Symmetrized:
    case prop::PropName::VolumeS1:
      return darg(a1 - a2, b1 - b2);
    case prop::PropName::Kontsevich:
      return 0.5 * (darg(a1 - a2, b1 - b2) + darg(a1 - std::conj(a2), b1 - std::conj(b2)) -
                    darg(std::conj(a1) - a2, std::conj(b1) - b2) -
                    darg(std::conj(a1) - std::conj(a2), std::conj(b1) - std::conj(b2)));
    case prop::PropName::AntiKontsevich:
      // The Kontsevich angle with the pair swapped.
      return 0.5 * (darg(a2 - a1, b2 - b1) + darg(a2 - std::conj(a1), b2 - std::conj(b1)) -
                    darg(std::conj(a2) - a1, std::conj(b2) - b1) -
                    darg(std::conj(a2) - std::conj(a1), std::conj(b2) - std::conj(b1)));
    case prop::PropName::FamilyT: {
      prop::Propagator k{prop::PropName::Kontsevich, 1.0};
      prop::Propagator a{prop::PropName::AntiKontsevich, 0.0};
      return w.t * fd_row_entry(k, mode, p, i, j, coord, h) +
             (1.0 - w.t) * fd_row_entry(a, mode, p, i, j, coord, h);
    }
    case prop::PropName::HalfK:
      return dlog_over_i(a1 - a2, b1 - b2) -
             dlog_over_i(std::conj(a1) - a2, std::conj(b1) - b2);
    case prop::PropName::HalfKAnti:
      return dlog_over_i(a1 - a2, b1 - b2) -
             dlog_over_i(a1 - std::conj(a2), b1 - std::conj(b2));
  }
  return {};
}

}  // namespace

TEST_CASE("forgetful map pins") {
  ConfigurationPoint p;
  p.z = {cplx(1.0, 1.0), cplx(0.0, 1.0)};
  CHECK(std::abs(prop::forgetful_pi(p, 1, 2) - cplx(1.0, 0.0)) < 1e-15);
  CHECK(std::abs(prop::forgetful_pi(p, 2, 1) - cplx(-1.0, 0.0)) < 1e-15);
  CHECK_THROWS(prop::forgetful_pi(p, 1, 1));
}

TEST_CASE("renormalized map pins") {
  ConfigurationPoint p;
  p.z = {cplx(0.3, 1.0), cplx(-0.3, 2.0)};
  // n = 2: the map is the identity on the gauge-fixed pair (z_min plays the
  // role of the lower point).
  auto pair = prop::renormalized_fp(p, 1, 2);
  REQUIRE(pair.has_value());
  CHECK(std::abs(pair->second - p.z_min()) < 1e-15);
  CHECK(std::abs(pair->first - (p.z[1] - p.z[0] + p.z_min())) > 0.0);  // case y1<y2
  // Seam: equal heights.
  ConfigurationPoint seam;
  seam.z = {cplx(0.0, 1.0), cplx(1.0, 1.0)};
  CHECK_FALSE(prop::renormalized_fp(seam, 1, 2).has_value());
  // The higher point's component carries z_min.
  ConfigurationPoint q;
  q.z = {cplx(0.0, 3.0), cplx(1.0, 1.0), cplx(-1.0, 2.0)};
  auto pq = prop::renormalized_fp(q, 1, 2);
  REQUIRE(pq.has_value());
  CHECK(std::abs(pq->second - q.z_min()) < 1e-15);
}

TEST_CASE("renormalized map is invariant under real shifts") {
  std::mt19937_64 rng(41);
  prop::Propagator K{prop::PropName::Kontsevich, 1.0};
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_config(3, rng, true);
    auto row = prop::pullback_halfplane(K, prop::MapMode::Renormalized, p, 1, 3);
    ConfigurationPoint shifted = p;
    for (auto& z : shifted.z) z += 0.7;
    auto row2 = prop::pullback_halfplane(K, prop::MapMode::Renormalized, shifted, 1, 3);
    REQUIRE(row.has_value());
    REQUIRE(row2.has_value());
    for (size_t c = 0; c < row->size(); ++c)
      CHECK(std::abs((*row)[c] - (*row2)[c]) < 1e-9);
  }
}

TEST_CASE("analytic partials agree with central differences") {
  std::mt19937_64 rng(43);
  const double h = 1e-6;
  std::vector<prop::Propagator> props = {
      prop::parse_propagator("kontsevich"), prop::parse_propagator("anti_kontsevich"),
      prop::parse_propagator("symmetrized"), prop::parse_propagator("family_t:0.25"),
      prop::parse_propagator("half_k"), prop::parse_propagator("half_k_anti")};
  for (const auto& w : props) {
    for (auto mode : {prop::MapMode::Plain, prop::MapMode::Renormalized}) {
      for (int trial = 0; trial < 40; ++trial) {
        auto p = random_config(3, rng, true);
        int i = 1 + (int)(rng() % 3), j = 1 + (int)(rng() % 3);
        if (i == j) continue;
        auto row = prop::pullback_halfplane(w, mode, p, i, j);
        REQUIRE(row.has_value());
        for (int coord = 0; coord < 6; ++coord) {
          cplx fd = fd_row_entry(w, mode, p, i, j, coord, h);
          double scale = std::max(1.0, std::abs((*row)[coord]));
          CHECK(std::abs((*row)[coord] - fd) / scale < 1e-7);
        }
      }
    }
  }
}

TEST_CASE("plane pullback is invariant under translation and scaling") {
  std::mt19937_64 rng(47);
  auto rho = prop::homogeneous_circle_form();
  for (int trial = 0; trial < 20; ++trial) {
    auto p = random_config(3, rng, false);
    auto row = prop::pullback_circle(rho, p, 1, 2);
    REQUIRE(row.has_value());
    ConfigurationPoint moved = p;
    for (auto& z : moved.z) z = z + cplx(0.4, -1.1);
    auto row2 = prop::pullback_circle(rho, moved, 1, 2);
    REQUIRE(row2.has_value());
    for (size_t c = 0; c < row->size(); ++c)
      CHECK(std::abs((*row)[c] - (*row2)[c]) < 1e-12);
    // Positive scaling rescales the covector by 1/a (the angle is invariant,
    // coordinates stretch).
    ConfigurationPoint scaled = p;
    for (auto& z : scaled.z) z *= 2.0;
    auto row3 = prop::pullback_circle(rho, scaled, 1, 2);
    for (size_t c = 0; c < row->size(); ++c)
      CHECK(std::abs((*row)[c] - 2.0 * (*row3)[c]) < 1e-12);
  }
}

TEST_CASE("boundary restrictions normalize to 2 pi") {
  for (const char* name :
       {"kontsevich", "anti_kontsevich", "symmetrized", "family_t:0.3", "volume_s1"}) {
    auto w = prop::parse_propagator(name);
    for (auto side : {prop::Side::Inner, prop::Side::Outer}) {
      auto rho = prop::boundary_restriction(w, side);
      REQUIRE_FALSE(rho.singular);
      CHECK(std::abs(rho.circle_integral(100000) - 2.0 * kPi) < 1e-6);
    }
  }
}

TEST_CASE("boundary restriction pins") {
  auto sym = prop::boundary_restriction(prop::parse_propagator("symmetrized"),
                                        prop::Side::Outer);
  CHECK(sym.upper == 1.0);
  CHECK(sym.lower == 1.0);
  auto fam_inner = prop::boundary_restriction(prop::parse_propagator("family_t:0.77"),
                                              prop::Side::Inner);
  CHECK(fam_inner.upper == 1.0);
  CHECK(fam_inner.lower == 1.0);
  auto half_inner =
      prop::boundary_restriction(prop::parse_propagator("half_k"), prop::Side::Inner);
  CHECK(half_inner.singular);
  auto k_out = prop::boundary_restriction(prop::parse_propagator("kontsevich"),
                                          prop::Side::Outer);
  CHECK(k_out.upper == 2.0);
  CHECK(k_out.lower == 0.0);
}

TEST_CASE("kontsevich pullback approaches dArg near collapse") {
  // As the pair collides with heights held apart, the Kontsevich form tends
  // to the homogeneous angle form.
  prop::Propagator K{prop::PropName::Kontsevich, 1.0};
  prop::Propagator sym{prop::PropName::Symmetrized, 0.5};
  ConfigurationPoint p;
  double eps = 1e-4;
  p.z = {cplx(0.0, 1.0), cplx(eps, 1.0 + eps)};
  auto gk = prop::form_gradient(K, p.z[0], p.z[1]);
  auto gs = prop::form_gradient(sym, p.z[0], p.z[1]);
  for (int c = 0; c < 4; ++c)
    CHECK(std::abs(gk[c] - gs[c]) / std::abs(gs[c]) < 5e-4);
}
