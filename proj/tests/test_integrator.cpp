#include <doctest.h>

#include <cmath>

#include "gcalc/integrator.hpp"
#include "gcalc/numbers.hpp"
#include "gcalc/theory.hpp"

using namespace gcalc;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("single edge weight is exactly one for the homogeneous form") {
  mc::McOptions opt;
  opt.samples = 50000;
  opt.seed = 3;
  auto est = mc::mc_weight_Cn(graphs::parse_graph("2;1;1>2"),
                              prop::homogeneous_circle_form(), opt);
  CHECK(est.value.real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.std_error == doctest::Approx(0.0));
}

TEST_CASE("degree mismatch is rejected") {
  mc::McOptions opt;
  CHECK_THROWS(mc::mc_weight_Cn(graphs::parse_graph("3;2;1>2,2>3"),
                                prop::homogeneous_circle_form(), opt));
  CHECK_THROWS(mc::mc_weight_Cn0(graphs::parse_graph("3;3;1>2,2>3,3>1"),
                                 prop::parse_propagator("kontsevich"),
                                 prop::MapMode::Renormalized, opt));
}

TEST_CASE("singular propagators need the experimental flag") {
  mc::McOptions opt;
  opt.samples = 1000;
  auto w2 = graphs::wheel(2);
  CHECK_THROWS(mc::mc_weight_Cn0(w2, prop::parse_propagator("half_k_anti"),
                                 prop::MapMode::Plain, opt));
  opt.experimental_singular = true;
  CHECK_NOTHROW(mc::mc_weight_Cn0(w2, prop::parse_propagator("half_k_anti"),
                                  prop::MapMode::Plain, opt));
}

TEST_CASE("determinism: same seed and shards, any thread count") {
  auto g = graphs::parse_graph("3;3;1>2,2>3,1>3");
  auto rho = prop::boundary_restriction(prop::parse_propagator("kontsevich"),
                                        prop::Side::Outer);
  mc::McOptions a;
  a.samples = 40000;
  a.seed = 77;
  a.threads = 1;
  mc::McOptions b = a;
  b.threads = 2;
  auto ea = mc::mc_weight_Cn(g, rho, a);
  auto eb = mc::mc_weight_Cn(g, rho, b);
  CHECK(ea.value.real() == eb.value.real());
  CHECK(ea.std_error == eb.std_error);
  mc::McOptions c = a;
  c.seed = 78;
  auto ec = mc::mc_weight_Cn(g, rho, c);
  CHECK(ea.value.real() != ec.value.real());
}

TEST_CASE("orientation antisymmetry: edge swap negates the estimate exactly") {
  auto g = graphs::parse_graph("3;3;1>2,2>3,1>3");
  auto swapped = g;
  std::swap(swapped.edges[0], swapped.edges[1]);
  auto rho = prop::boundary_restriction(prop::parse_propagator("kontsevich"),
                                        prop::Side::Outer);
  mc::McOptions opt;
  opt.samples = 30000;
  opt.seed = 5;
  auto e1 = mc::mc_weight_Cn(g, rho, opt);
  auto e2 = mc::mc_weight_Cn(swapped, rho, opt);
  CHECK(e1.value.real() == -e2.value.real());
  auto parity_flip = g;
  parity_flip.parity = -1;
  auto e3 = mc::mc_weight_Cn(parity_flip, rho, opt);
  CHECK(e1.value.real() == -e3.value.real());
}

TEST_CASE("gauge independence across pinned vertices") {
  auto gp = graphs::parse_graph("3;4;3>1,1>3,2>3,2>1");
  mc::McOptions a;
  a.samples = 400000;
  a.seed = 21;
  a.pin_vertex = 1;
  mc::McOptions b = a;
  b.pin_vertex = 2;
  b.seed = 22;
  auto K = prop::parse_propagator("kontsevich");
  auto ea = mc::mc_weight_Cn0(gp, K, prop::MapMode::Renormalized, a);
  auto eb = mc::mc_weight_Cn0(gp, K, prop::MapMode::Renormalized, b);
  double sigma = std::hypot(ea.std_error, eb.std_error);
  CHECK(std::abs(ea.value.real() - eb.value.real()) < 3.0 * sigma);
}

TEST_CASE("labeling independence on C_n") {
  auto g = graphs::parse_graph("3;3;1>2,2>3,1>3");
  auto relabeled = graphs::parse_graph("3;3;2>1,1>3,2>3");  // swap labels 1,2
  auto rho = prop::boundary_restriction(prop::parse_propagator("kontsevich"),
                                        prop::Side::Outer);
  mc::McOptions opt;
  opt.samples = 400000;
  opt.seed = 31;
  auto e1 = mc::mc_weight_Cn(g, rho, opt);
  opt.seed = 32;
  auto e2 = mc::mc_weight_Cn(relabeled, rho, opt);
  double sigma = std::hypot(e1.std_error, e2.std_error);
  CHECK(std::abs(e1.value.real() - e2.value.real()) < 3.0 * sigma);
}

TEST_CASE("analytic appendix-4 table") {
  auto g1 = graphs::parse_graph("4;5;3>1,3>2,4>1,4>2,2>1");
  auto w1 = mc::analytic_weight_appendix4(g1);
  REQUIRE(w1.has_value());
  CHECK(*w1 == Rat(1, 12));
  // Swapping two edges flips the sign.
  auto flipped = g1;
  std::swap(flipped.edges[0], flipped.edges[1]);
  CHECK(*mc::analytic_weight_appendix4(flipped) == Rat(-1, 12));
  // A vanishing shape and an out-of-table graph.
  CHECK(*mc::analytic_weight_appendix4(
            graphs::parse_graph("4;5;4>2,4>3,4>1,2>1,3>2")) == Rat(0));
  CHECK_FALSE(mc::analytic_weight_appendix4(
                  graphs::parse_graph("5;7;1>2,2>3,3>4,4>5,5>1,1>3,2>4"))
                  .has_value());
  // Relabeled copies resolve through the vertex search (here 1<->3, 2<->4).
  auto relabeled = graphs::parse_graph("4;5;1>3,1>4,2>3,2>4,4>3");
  auto wr = mc::analytic_weight_appendix4(relabeled);
  REQUIRE(wr.has_value());
  CHECK(abs(*wr) == Rat(1, 12));
}

TEST_CASE("wheel closed forms") {
  CHECK(mc::wheel_weight_bernoulli_exact(2) == Rat(1, 24));
  CHECK(mc::wheel_weight_bernoulli_exact(4) == Rat(1, 1440));
  CHECK(mc::wheel_weight_bernoulli_exact(6) == Rat(1, 60480));
  for (int n : {2, 4, 6}) {
    auto z = mc::wheel_weight_closed_form(n, mc::WheelVariant::HalfK);
    auto b = mc::wheel_weight_closed_form(n, mc::WheelVariant::BernoulliEven);
    CHECK(std::abs(z - b) < 1e-12);
  }
  // Odd wheel: purely imaginary with magnitude zeta(3)/(8 pi^3).
  auto w3 = mc::wheel_weight_closed_form(3, mc::WheelVariant::HalfK);
  CHECK(std::abs(w3.real()) < 1e-15);
  CHECK(std::abs(std::abs(w3.imag()) - zeta_series(3) / (8.0 * kPi * kPi * kPi)) <
        1e-12);
  CHECK_THROWS(mc::wheel_weight_closed_form(1, mc::WheelVariant::HalfK));
  CHECK_THROWS(mc::wheel_weight_closed_form(3, mc::WheelVariant::BernoulliEven));
}

TEST_CASE("zeta box integral matches the series oracle") {
  mc::McOptions opt;
  opt.samples = 400000;
  opt.seed = 9;
  for (int n : {2, 3}) {
    auto est = mc::zeta_box_integral(n, opt);
    double oracle = mc::zeta_box_series(n);
    CHECK(std::abs(est.value.real() - oracle) <
          std::max(0.02 * oracle, 4.0 * est.std_error));
  }
  CHECK_THROWS(mc::zeta_box_integral(1, opt));
}

TEST_CASE("zeta series oracle accuracy") {
  CHECK(std::abs(zeta_series(2) - kPi * kPi / 6.0) < 1e-13);
  CHECK(std::abs(zeta_series(3) - 1.2020569031595943) < 1e-13);
  CHECK(std::abs(zeta_partial_sum(2, 2000) - kPi * kPi / 6.0) < 1e-3);
}

TEST_CASE("exact tables are orientation aware") {
  mc::ExactTable t;
  auto g = graphs::parse_graph("3;3;2>3,1>2,1>3");
  t.set(g, Rat(5));
  CHECK(t.lookup(g) == Rat(5));
  auto swapped = g;
  std::swap(swapped.edges[0], swapped.edges[1]);
  CHECK(t.lookup(swapped) == Rat(-5));
  CHECK(t.lookup(graphs::parse_graph("3;3;1>2,1>2,1>2")) == Rat(0));
  mc::ExactTable strict;
  strict.total = false;
  CHECK_THROWS(strict.lookup(g));
}

TEST_CASE("closed Stokes identity for the dArg theory") {
  auto table = theory::omega0_c_table();
  for (int n = 3; n <= 4; ++n)
    for (const auto& cls : graphs::enumerate_graphs(n, 2 * n - 4, true))
      CHECK(mc::stokes_residual_closed(cls.representative, table) == 0);
}

TEST_CASE("morphism Stokes identity: n = 2 cancels the in/out pair") {
  auto cio = theory::omega0_c_table();
  mc::ExactTable C;  // identically zero beyond the point graph
  CHECK(mc::stokes_residual_morphism(graphs::parse_graph("2;1;1>2"), cio, cio, C) == 0);
  for (const auto& cls : graphs::enumerate_graphs(3, 3, true))
    CHECK(mc::stokes_residual_morphism(cls.representative, cio, cio, C) == 0);
  // Breaking the out-table leaves a visible residual at n = 2.
  mc::ExactTable broken;
  broken.set(graphs::parse_graph("2;1;1>2"), Rat(2));
  broken.set(graphs::parse_graph("2;1;2>1"), Rat(2));
  CHECK(mc::stokes_residual_morphism(graphs::parse_graph("2;1;1>2"), cio, broken, C) !=
        0);
}

TEST_CASE("antithetic and stratified options stay deterministic") {
  auto g = graphs::parse_graph("3;3;1>2,2>3,1>3");
  auto rho = prop::boundary_restriction(prop::parse_propagator("kontsevich"),
                                        prop::Side::Outer);
  mc::McOptions opt;
  opt.samples = 30000;
  opt.seed = 14;
  opt.stratify_theta = true;
  auto e1 = mc::mc_weight_Cn(g, rho, opt);
  auto e2 = mc::mc_weight_Cn(g, rho, opt);
  CHECK(e1.value.real() == e2.value.real());
}
