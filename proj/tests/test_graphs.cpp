#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "gcalc/graphs.hpp"

using namespace gcalc;
using graphs::DecoratedGraph;

TEST_CASE("enumerate_graphs matches the small hand counts") {
  auto two_one = graphs::enumerate_graphs(2, 1, true);
  REQUIRE(two_one.size() == 2);
  CHECK(graphs::format_graph(two_one[0].representative) == "2;1;1>2");
  CHECK(graphs::format_graph(two_one[1].representative) == "2;1;2>1");

  auto two_two = graphs::enumerate_graphs(2, 2, true);
  REQUIRE(two_two.size() == 3);
  CHECK(graphs::format_graph(two_two[0].representative) == "2;2;1>2,1>2");
  CHECK(graphs::format_graph(two_two[1].representative) == "2;2;1>2,2>1");
  CHECK(graphs::format_graph(two_two[2].representative) == "2;2;2>1,2>1");

  CHECK(graphs::enumerate_graphs(1, 1, true).empty());
  CHECK(graphs::enumerate_graphs(3, 0, true).size() == 1);
}

TEST_CASE("enumeration has no duplicates under its own equivalence") {
  for (int n = 2; n <= 4; ++n)
    for (int l = 0; l <= 2 * n - 3; ++l) {
      std::set<std::string> seen;
      for (const auto& cls : graphs::enumerate_graphs(n, l, true))
        CHECK(seen.insert(graphs::format_graph(cls.representative)).second);
      std::set<std::string> unlabeled;
      for (const auto& cls : graphs::enumerate_graphs_unlabeled(n, l, true))
        CHECK(unlabeled
                  .insert(graphs::format_graph(
                      graphs::canonical_unlabeled(cls.representative)))
                  .second);
    }
}

TEST_CASE("graph text format round trip is bit exact") {
  const std::string text = "4;5;3>1,3>2,4>1,4>2,2>1";
  auto g = graphs::parse_graph(text);
  CHECK(g.n == 4);
  CHECK(g.edge_count() == 5);
  CHECK(graphs::format_graph(g) == text);
  auto u = graphs::parse_graph("3;2;1-2,2-3");
  CHECK_FALSE(u.directed);
  CHECK(graphs::format_graph(u) == "3;2;1-2,2-3");
  CHECK_THROWS(graphs::parse_graph("2;1;1>1"));
  CHECK_THROWS(graphs::parse_graph("2;2;1>2"));
}

TEST_CASE("wheel graphs") {
  auto w2 = graphs::wheel(2);
  CHECK(w2.n == 3);
  CHECK(w2.edge_count() == 4);
  auto w3 = graphs::wheel(3);
  CHECK(w3.n == 4);
  CHECK(w3.edge_count() == 6);
  CHECK_THROWS(graphs::wheel(1));
  // Every rim vertex sends a spoke into the hub.
  for (int i = 1; i <= 3; ++i)
    CHECK(std::count(w3.edges.begin(), w3.edges.end(), std::pair{i, 4}) == 1);
}

TEST_CASE("complete subgraph and quotient of the 4.2.4 graph") {
  auto g = graphs::parse_graph("4;5;3>1,3>2,4>1,4>2,2>1");
  auto sub12 = graphs::complete_subgraph(g, {1, 2});
  CHECK(graphs::format_graph(sub12) == "2;1;2>1");
  auto sub34 = graphs::complete_subgraph(g, {3, 4});
  CHECK(sub34.edge_count() == 0);
  auto all = graphs::complete_subgraph(g, {1, 2, 3, 4});
  CHECK(all == g);

  auto q = graphs::quotient_graph(g, {1, 2});
  CHECK(q.n == 3);
  CHECK(graphs::format_graph(q) == "3;4;2>1,2>1,3>1,3>1");
  auto qid = graphs::quotient_graph(g, std::vector<int>{3});
  CHECK(qid.n == 4);
  CHECK(qid.edge_count() == 5);

  auto rimq = graphs::quotient_graph(graphs::wheel(3), {1, 2, 3});
  CHECK(rimq.n == 2);
  CHECK(graphs::format_graph(rimq) == "2;3;1>2,1>2,1>2");
}

TEST_CASE("edge count bookkeeping under quotients") {
  for (const auto& cls : graphs::enumerate_graphs(4, 4, true)) {
    const auto& g = cls.representative;
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::vector<int> A;
      for (int i = 0; i < 4; ++i)
        if (mask & (1u << i)) A.push_back(i + 1);
      if (A.size() < 2 || A.size() >= 4) continue;
      auto sub = graphs::complete_subgraph(g, A);
      auto quot = graphs::quotient_graph(g, A);
      CHECK(quot.edge_count() == g.edge_count() - sub.edge_count());
    }
  }
}

TEST_CASE("admissibility criteria") {
  auto g = graphs::parse_graph("4;5;3>1,3>2,4>1,4>2,2>1");  // in G_{4,5}
  CHECK(graphs::is_admissible(g, {1, 2}, graphs::AdmissibleContext::Collapse2nMinus3));
  CHECK_FALSE(
      graphs::is_admissible(g, {3, 4}, graphs::AdmissibleContext::Collapse2nMinus3));
  // (iii): singleton blocks need 0 internal edges each.
  auto h = graphs::parse_graph("2;1;1>2");
  CHECK(graphs::is_admissible(h, std::vector<std::vector<int>>{{1}, {2}}, graphs::AdmissibleContext::Partition));
  auto h2 = graphs::parse_graph("3;3;1>2,1>2,2>3");
  CHECK_FALSE(
      graphs::is_admissible(h2, std::vector<std::vector<int>>{{1, 2}, {3}}, graphs::AdmissibleContext::Partition));
  CHECK_THROWS(
      graphs::is_admissible(g, {1, 2}, graphs::AdmissibleContext::Collapse2nMinus4));
}

TEST_CASE("koszul sign is the edge-sort parity") {
  auto g = graphs::parse_graph("4;5;3>1,3>2,4>1,4>2,2>1");
  // Internal edge of A={1,2} is last already: identity permutation.
  CHECK(graphs::koszul_sign(g, std::vector<int>{1, 2}) == 1);
  // Move the internal edge one slot earlier: one transposition.
  auto g2 = graphs::parse_graph("4;5;3>1,3>2,4>1,2>1,4>2");
  CHECK(graphs::koszul_sign(g2, std::vector<int>{1, 2}) == -1);
  // Multiplicativity under a double swap.
  auto g3 = graphs::parse_graph("4;5;3>1,2>1,3>2,4>1,4>2");
  CHECK(graphs::koszul_sign(g3, std::vector<int>{1, 2}) == 1);
  // Parity flag rides along.
  auto gp = g;
  gp.parity = -1;
  CHECK(graphs::koszul_sign(gp, std::vector<int>{1, 2}) == -1);
}

TEST_CASE("automorphism counts") {
  CHECK(graphs::automorphism_count(graphs::parse_graph("2;1;1>2")) == 1);
  CHECK(graphs::automorphism_count(graphs::parse_graph("2;1;1-2")) == 2);
  for (int n = 2; n <= 5; ++n) CHECK(graphs::automorphism_count(graphs::wheel(n)) == n);
  // Aut order divides n! for everything small.
  for (int n = 2; n <= 4; ++n) {
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (const auto& cls : graphs::enumerate_graphs_unlabeled(n, 3, true))
      CHECK(fact % graphs::automorphism_count(cls.representative) == 0);
  }
}

TEST_CASE("canonical unlabeled form is relabeling invariant") {
  auto g = graphs::parse_graph("4;5;3>1,3>2,4>1,4>2,2>1");
  auto canon = graphs::canonical_unlabeled(g);
  std::vector<int> perm{2, 4, 1, 3};
  std::vector<std::pair<int, int>> edges;
  for (auto [s, t] : g.edges) edges.emplace_back(perm[s - 1], perm[t - 1]);
  auto relabeled = graphs::make_graph(4, edges, true);
  CHECK(graphs::canonical_unlabeled(relabeled) == canon);
}
