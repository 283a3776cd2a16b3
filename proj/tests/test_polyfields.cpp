#include <doctest.h>

#include <random>

#include "gcalc/polyfields.hpp"

using namespace gcalc;
using poly::Algebra;
using poly::Grading;
using poly::Poly;

namespace {
Algebra alg1{Grading(1), 1};
Algebra alg2{Grading(2), 1};
Algebra alg3{Grading(3), 1};
}  // namespace

TEST_CASE("delta on the pinned examples") {
  auto x = poly::coordinate(alg1, 1);
  auto p = poly::psi(alg1, 1);
  CHECK(poly::delta(x).is_zero());
  CHECK(poly::delta(poly::mul(x, p)) == poly::constant(alg1, 1));
}

TEST_CASE("delta squares to zero on random fields") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = poly::random_poly(alg3, 5, 4, 1, rng);
    CHECK(poly::delta(poly::delta(g)).is_zero());
  }
}

TEST_CASE("schouten bracket pinned values") {
  auto x = poly::coordinate(alg1, 1);
  auto p = poly::psi(alg1, 1);
  auto xp = poly::mul(x, p);
  // Two functions have no psi to contract.
  CHECK(poly::schouten(x, poly::mul(x, x)).is_zero());
  CHECK(poly::schouten(xp, x) == x);
}

TEST_CASE("so(3) bivector closes under the bracket") {
  auto so3 = poly::parse_poly(
      alg3, "1*x1*psi2*psi3 + -1*x2*psi1*psi3 + 1*x3*psi1*psi2");
  CHECK(poly::schouten(so3, so3).is_zero());
}

TEST_CASE("graded Jacobi via the homotopy relation shape") {
  // [[a.b].c] + [[a.c].b] + (-1)^{|a|}[a.[b.c]] = 0 for homogeneous fields.
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    int da = (int)(rng() % 3), db = (int)(rng() % 3), dc = (int)(rng() % 3);
    auto a = poly::random_homogeneous(alg2, da, 3, 2, rng);
    auto b = poly::random_homogeneous(alg2, db, 3, 2, rng);
    auto c = poly::random_homogeneous(alg2, dc, 3, 2, rng);
    auto defect = poly::schouten(poly::schouten(a, b), c) +
                  poly::schouten(poly::schouten(a, c), b);
    auto third = poly::schouten(a, poly::schouten(b, c));
    if (da % 2) third *= Rat(-1);
    defect += third;
    CHECK(defect.is_zero());
  }
}

TEST_CASE("phi pinned examples") {
  auto p = poly::psi(alg1, 1);
  auto x = poly::coordinate(alg1, 1);
  auto x2 = poly::mul(x, x);
  auto g12 = graphs::parse_graph("2;1;1>2");
  auto got = poly::phi(g12, {p, x2});
  CHECK(poly::to_string(got) == "2*x1");
  // An edge out of a vertex with no psi dies.
  CHECK(poly::phi(g12, {x2, x2}).is_zero());
}

TEST_CASE("phi on the two 2-vertex graphs reproduces the Schouten bracket") {
  std::mt19937_64 rng(99);
  auto g12 = graphs::parse_graph("2;1;1>2");
  auto g21 = graphs::parse_graph("2;1;2>1");
  for (int trial = 0; trial < 20; ++trial) {
    auto a = poly::random_poly(alg3, 4, 2, 1, rng);
    auto b = poly::random_poly(alg3, 4, 2, 1, rng);
    auto mu2 = poly::phi(g12, {a, b}) + poly::phi(g21, {a, b});
    CHECK(mu2 == poly::schouten(a, b));
  }
}

TEST_CASE("phi degree drops by the edge count") {
  std::mt19937_64 rng(5);
  auto g = graphs::parse_graph("3;3;1>2,2>3,1>3");
  for (int trial = 0; trial < 10; ++trial) {
    auto a = poly::random_homogeneous(alg2, 2, 3, 2, rng);
    auto b = poly::random_homogeneous(alg2, 2, 3, 2, rng);
    auto c = poly::random_homogeneous(alg2, 1, 3, 2, rng);
    auto out = poly::phi(g, {a, b, c});
    int deg = 0;
    CHECK(out.is_homogeneous(&deg));
    if (!out.is_zero()) CHECK(deg == 5 - 3);
  }
}

TEST_CASE("orientation parity flips phi") {
  std::mt19937_64 rng(6);
  auto g = graphs::parse_graph("2;2;1>2,2>1");
  auto flipped = g;
  std::swap(flipped.edges[0], flipped.edges[1]);
  auto a = poly::random_homogeneous(alg2, 2, 3, 2, rng);
  auto b = poly::random_homogeneous(alg2, 2, 3, 2, rng);
  CHECK(poly::phi(g, {a, b}) == -poly::phi(flipped, {a, b}));
  auto gp = g;
  gp.parity = -1;
  CHECK(poly::phi(g, {a, b}) == -poly::phi(gp, {a, b}));
}

TEST_CASE("phi_sym equals the orientation average on a single edge") {
  std::mt19937_64 rng(11);
  auto ue = graphs::parse_graph("2;1;1-2");
  auto g12 = graphs::parse_graph("2;1;1>2");
  auto g21 = graphs::parse_graph("2;1;2>1");
  for (int trial = 0; trial < 10; ++trial) {
    auto biv = poly::random_homogeneous(alg3, 2, 4, 2, rng);
    auto lhs = poly::phi_sym(ue, {biv, biv});
    // 1/2! * sum over labelings doubles up; equals the sum of orientations.
    CHECK(lhs == poly::phi(g12, {biv, biv}) + poly::phi(g21, {biv, biv}));
  }
}

TEST_CASE("phi_sym rejects loops and is symmetric on even arguments") {
  auto loop = graphs::DecoratedGraph{1, {{1, 1}}, false, 1};
  std::vector<Poly> args{poly::constant(alg2, 1)};
  CHECK_THROWS(poly::phi_sym(loop, args));

  std::mt19937_64 rng(13);
  auto path = graphs::parse_graph("3;2;1-2,2-3");
  for (int trial = 0; trial < 6; ++trial) {
    auto a = poly::random_homogeneous(alg2, 2, 3, 2, rng);
    auto b = poly::random_homogeneous(alg2, 2, 3, 2, rng);
    auto c = poly::random_homogeneous(alg2, 0, 3, 2, rng);
    CHECK(poly::phi_sym(path, {a, b, c}) == poly::phi_sym(path, {b, a, c}));
  }
}

TEST_CASE("composition identity for gluings with up to three edges") {
  std::mt19937_64 rng(19);
  auto homog = [&](int deg) { return poly::random_homogeneous(alg2, deg, 2, 2, rng); };
  for (int l1 = 0; l1 <= 2; ++l1)
    for (int l2 = 0; l1 + l2 <= 3; ++l2) {
      auto outers = graphs::enumerate_graphs(2, l1, true);
      auto inners = graphs::enumerate_graphs(2, l2, true);
      for (const auto& o : outers)
        for (const auto& in : inners)
          for (std::vector<int> A : {std::vector<int>{1, 2}, std::vector<int>{2, 3}}) {
            std::vector<Poly> gs{homog(1), homog(2), homog((int)(rng() % 3))};
            auto defect =
                poly::composition_identity_check(o.representative, in.representative, A, gs);
            CHECK(defect.is_zero());
          }
    }
  // Degenerate inner graph: plain product rule.
  auto g1 = graphs::parse_graph("2;2;1>2,1>2");
  auto g2 = graphs::parse_graph("2;0;");
  std::vector<Poly> gs{homog(2), homog(2), homog(1)};
  CHECK(poly::composition_identity_check(g1, g2, {2, 3}, gs).is_zero());
}

TEST_CASE("text format round trip") {
  auto p = poly::parse_poly(alg3, "3/2*x1^2*psi1*psi3 + -1*x2 + 5");
  auto q = poly::parse_poly(alg3, poly::to_string(p));
  CHECK(p == q);
  CHECK(poly::to_string(poly::zero(alg3)) == "0");
  CHECK_THROWS(poly::parse_poly(alg3, "1*x4"));
  CHECK_THROWS(poly::parse_poly(alg3, "1*psi1^2"));
}

TEST_CASE("graded coordinates: odd x squares to zero") {
  Algebra odd{Grading(2, {1, 0}), 1};
  auto x1 = poly::coordinate(odd, 1);
  CHECK(poly::mul(x1, x1).is_zero());
  // |psi_1| = 0 for |x^1| = 1: psi_1 powers survive.
  auto p1 = poly::psi(odd, 1);
  CHECK_FALSE(poly::mul(p1, p1).is_zero());
  // Delta still squares to zero.
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = poly::random_poly(odd, 4, 2, 2, rng);
    CHECK(poly::delta(poly::delta(g)).is_zero());
  }
}
