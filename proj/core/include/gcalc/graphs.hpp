#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gcalc::graphs {

// A multigraph with vertices labeled 1..n and an ordered edge list. Loops are
// forbidden; parallel edges are fine. The edge order carries the orientation:
// swapping two edges flips `parity`, and (edges, -parity) encodes Gamma_opp.
// In undirected mode each edge is stored with source < target.
struct DecoratedGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  bool directed = true;
  int parity = +1;

  int edge_count() const { return (int)edges.size(); }
  bool operator==(const DecoratedGraph& o) const {
    return n == o.n && edges == o.edges && directed == o.directed && parity == o.parity;
  }
};

enum class Family { DirectedLabeled, OrientationClasses, Undirected };

struct GraphClass {
  DecoratedGraph representative;  // canonical: least edge list, parity +1
  Family family = Family::DirectedLabeled;
  bool operator==(const GraphClass& o) const {
    return representative == o.representative && family == o.family;
  }
};

DecoratedGraph make_graph(int n, std::vector<std::pair<int, int>> edges,
                          bool directed = true, int parity = +1);

// `n;l;s1>t1,...` for directed, `s1-t1,...` for undirected. Bit-exact format.
DecoratedGraph parse_graph(const std::string& text);
std::string format_graph(const DecoratedGraph& g);

// Sorts the edge list; parity tracks the sort permutation. Labels untouched.
DecoratedGraph canonical_ordered(const DecoratedGraph& g, int* sign = nullptr);

// Minimum over all vertex relabelings of the sorted edge list. Brute force,
// intended for n <= 8.
DecoratedGraph canonical_unlabeled(const DecoratedGraph& g);

// Every isomorphism-inequivalent labeled multigraph with n vertices and l
// edges, canonical representatives in lexicographic order. n=1, l>=1 is empty.
std::vector<GraphClass> enumerate_graphs(int n, int l, bool directed);

// As above but with vertex labels forgotten (one canonical representative per
// unlabeled class).
std::vector<GraphClass> enumerate_graphs_unlabeled(int n, int l, bool directed);

// The wheel w_n: rim cycle 1 -> 2 -> ... -> n -> 1 plus spokes i -> n+1, with
// edge order (1,2),(2,3),...,(n-1,n),(n,1),(1,n+1),...,(n,n+1). n >= 2.
DecoratedGraph wheel(int n);

// Undirected wheel on n+1 vertices (the braid-family version of w_n).
DecoratedGraph wheel_undirected(int n);

// Vertices of A relabeled 1..#A preserving order; edges of Gamma with both
// ends in A, in induced order.
DecoratedGraph complete_subgraph(const DecoratedGraph& g, const std::vector<int>& A);

// Shrinks A to one vertex placed at position inf A; internal edges deleted;
// the rest keep their induced order.
DecoratedGraph quotient_graph(const DecoratedGraph& g, const std::vector<int>& A);

// Quotient by several disjoint blocks at once (each block shrinks to the
// position of its infimum among the surviving representatives).
DecoratedGraph quotient_graph(const DecoratedGraph& g,
                              const std::vector<std::vector<int>>& blocks);

enum class AdmissibleContext { Collapse2nMinus4, Collapse2nMinus3, Partition };

bool is_admissible(const DecoratedGraph& g, const std::vector<int>& A,
                   AdmissibleContext context);
bool is_admissible(const DecoratedGraph& g, const std::vector<std::vector<int>>& partition,
                   AdmissibleContext context);

// Parity of the permutation taking the stored edge order of Gamma to
// (quotient edges, then subgraph edges); the (-1)^{sigma_A} of the boundary
// factorization.
int koszul_sign(const DecoratedGraph& g, const std::vector<int>& A);

// Partition version: (cross-block edges, then block edges in block order).
int koszul_sign(const DecoratedGraph& g, const std::vector<std::vector<int>>& blocks);

// Order of the automorphism group of the underlying unlabeled graph
// (directions respected in directed mode). Brute force over S_n.
long long automorphism_count(const DecoratedGraph& g);

}  // namespace gcalc::graphs
