#include "gcalc/graphs.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace gcalc::graphs {

namespace {

void check_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  for (auto [s, t] : edges) {
    if (s < 1 || s > n || t < 1 || t > n)
      throw std::invalid_argument("graph edge endpoint out of range");
    if (s == t) throw std::invalid_argument("loop edges are forbidden");
  }
}

// Sorting permutation sign for a possibly-repeated sequence: counts
// inversions of a stable sort. Parallel (equal) edges do not contribute.
template <typename T>
int sort_sign(std::vector<T>& v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[j] < v[i]) sign = -sign;
  std::stable_sort(v.begin(), v.end());
  return sign;
}

std::vector<std::pair<int, int>> relabel_edges(const std::vector<std::pair<int, int>>& edges,
                                               const std::vector<int>& perm, bool directed) {
  // perm[v-1] is the new label of vertex v.
  std::vector<std::pair<int, int>> out;
  out.reserve(edges.size());
  for (auto [s, t] : edges) {
    int a = perm[s - 1], b = perm[t - 1];
    if (!directed && a > b) std::swap(a, b);
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace

DecoratedGraph make_graph(int n, std::vector<std::pair<int, int>> edges, bool directed,
                          int parity) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  if (parity != 1 && parity != -1) throw std::invalid_argument("parity must be +-1");
  check_edges(n, edges);
  if (!directed)
    for (auto& [s, t] : edges)
      if (s > t) std::swap(s, t);
  return DecoratedGraph{n, std::move(edges), directed, parity};
}

DecoratedGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string part;
  if (!std::getline(in, part, ';')) throw std::invalid_argument("bad graph string");
  int n = std::stoi(part);
  if (!std::getline(in, part, ';')) throw std::invalid_argument("bad graph string");
  int l = std::stoi(part);
  std::vector<std::pair<int, int>> edges;
  bool directed = true;
  std::string rest;
  std::getline(in, rest);
  if (!rest.empty()) {
    std::istringstream es(rest);
    std::string tok;
    while (std::getline(es, tok, ',')) {
      auto gt = tok.find('>');
      auto dash = tok.find('-');
      size_t pos;
      if (gt != std::string::npos) {
        pos = gt;
        directed = true;
      } else if (dash != std::string::npos) {
        pos = dash;
        directed = false;
      } else {
        throw std::invalid_argument("bad edge token: " + tok);
      }
      edges.emplace_back(std::stoi(tok.substr(0, pos)), std::stoi(tok.substr(pos + 1)));
    }
  }
  if ((int)edges.size() != l)
    throw std::invalid_argument("edge count does not match header");
  return make_graph(n, std::move(edges), directed);
}

std::string format_graph(const DecoratedGraph& g) {
  std::ostringstream out;
  out << g.n << ";" << g.edge_count() << ";";
  const char* sep = "";
  for (auto [s, t] : g.edges) {
    out << sep << s << (g.directed ? ">" : "-") << t;
    sep = ",";
  }
  return out.str();
}

DecoratedGraph canonical_ordered(const DecoratedGraph& g, int* sign) {
  DecoratedGraph out = g;
  int s = sort_sign(out.edges);
  if (sign) *sign = s;
  out.parity = 1;
  // The caller recovers the orientation as g.parity * s against `out`.
  return out;
}

DecoratedGraph canonical_unlabeled(const DecoratedGraph& g) {
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::pair<int, int>> best;
  bool first = true;
  do {
    auto e = relabel_edges(g.edges, perm, g.directed);
    std::sort(e.begin(), e.end());
    if (first || e < best) {
      best = e;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return DecoratedGraph{g.n, best, g.directed, 1};
}

std::vector<GraphClass> enumerate_graphs(int n, int l, bool directed) {
  if (n < 1) throw std::invalid_argument("enumerate_graphs: n < 1");
  if (l < 0) throw std::invalid_argument("enumerate_graphs: l < 0");
  std::vector<std::pair<int, int>> types;
  for (int s = 1; s <= n; ++s)
    for (int t = 1; t <= n; ++t) {
      if (s == t) continue;
      if (!directed && s > t) continue;
      types.emplace_back(s, t);
    }
  std::vector<GraphClass> out;
  if (types.empty()) {
    if (l == 0)
      out.push_back({make_graph(n, {}, directed),
                     directed ? Family::DirectedLabeled : Family::Undirected});
    return out;
  }
  // Multisets of size l over the edge types, lexicographic.
  std::vector<int> pick(l, 0);
  while (true) {
    std::vector<std::pair<int, int>> edges;
    edges.reserve(l);
    for (int i = 0; i < l; ++i) edges.push_back(types[pick[i]]);
    out.push_back({make_graph(n, std::move(edges), directed),
                   directed ? Family::DirectedLabeled : Family::Undirected});
    if (l == 0) break;
    int i = l - 1;
    while (i >= 0 && pick[i] == (int)types.size() - 1) --i;
    if (i < 0) break;
    int v = pick[i] + 1;
    for (int j = i; j < l; ++j) pick[j] = v;
  }
  return out;
}

std::vector<GraphClass> enumerate_graphs_unlabeled(int n, int l, bool directed) {
  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<GraphClass> out;
  for (const auto& cls : enumerate_graphs(n, l, directed)) {
    auto canon = canonical_unlabeled(cls.representative);
    if (seen.insert(canon.edges).second)
      out.push_back({canon, directed ? Family::DirectedLabeled : Family::Undirected});
  }
  return out;
}

DecoratedGraph wheel(int n) {
  if (n < 2) throw std::invalid_argument("wheel: rim size must be >= 2");
  // Rim circulates i+1 -> i with closing edge 1 -> n; spokes run into the
  // center. Order: the printed list (1,2),...,(n-1,n),(1,n+1),...,(n,n+1)
  // with the closing rim edge appended; this is the convention under which
  // Phi on the wheel reproduces the printed contraction formula.
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) edges.emplace_back(i + 1, i);
  for (int i = 1; i <= n; ++i) edges.emplace_back(i, n + 1);
  edges.emplace_back(1, n);
  return make_graph(n + 1, std::move(edges), true);
}

DecoratedGraph wheel_undirected(int n) {
  auto w = wheel(n);
  return make_graph(w.n, w.edges, false);
}

DecoratedGraph complete_subgraph(const DecoratedGraph& g, const std::vector<int>& A) {
  if (A.empty()) throw std::invalid_argument("complete_subgraph: empty subset");
  std::vector<int> sorted = A;
  std::sort(sorted.begin(), sorted.end());
  if (std::unique(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 1 ||
      sorted.back() > g.n)
    throw std::invalid_argument("complete_subgraph: bad subset");
  std::vector<int> newlabel(g.n + 1, 0);
  for (size_t i = 0; i < sorted.size(); ++i) newlabel[sorted[i]] = (int)i + 1;
  std::vector<std::pair<int, int>> edges;
  for (auto [s, t] : g.edges)
    if (newlabel[s] && newlabel[t]) edges.emplace_back(newlabel[s], newlabel[t]);
  return make_graph((int)sorted.size(), std::move(edges), g.directed, g.parity);
}

DecoratedGraph quotient_graph(const DecoratedGraph& g, const std::vector<int>& A) {
  return quotient_graph(g, std::vector<std::vector<int>>{A});
}

DecoratedGraph quotient_graph(const DecoratedGraph& g,
                              const std::vector<std::vector<int>>& blocks) {
  std::vector<int> block_of(g.n + 1, 0);  // 0 = not collapsed
  std::vector<int> block_min;
  block_min.push_back(0);
  for (size_t b = 0; b < blocks.size(); ++b) {
    const auto& A = blocks[b];
    if (A.empty()) throw std::invalid_argument("quotient_graph: empty block");
    int mn = g.n + 1;
    for (int v : A) {
      if (v < 1 || v > g.n) throw std::invalid_argument("quotient_graph: bad block");
      if (block_of[v]) throw std::invalid_argument("quotient_graph: overlapping blocks");
      block_of[v] = (int)b + 1;
      mn = std::min(mn, v);
    }
    block_min.push_back(mn);
  }
  // Survivors: inf of each block plus all untouched vertices, relabeled by rank.
  std::vector<int> survivors;
  for (int v = 1; v <= g.n; ++v)
    if (!block_of[v] || block_min[block_of[v]] == v) survivors.push_back(v);
  std::vector<int> rank(g.n + 1, 0);
  for (size_t i = 0; i < survivors.size(); ++i) rank[survivors[i]] = (int)i + 1;
  auto image = [&](int v) { return block_of[v] ? rank[block_min[block_of[v]]] : rank[v]; };
  std::vector<std::pair<int, int>> edges;
  for (auto [s, t] : g.edges) {
    if (block_of[s] && block_of[s] == block_of[t]) continue;  // internal edge
    edges.emplace_back(image(s), image(t));
  }
  return make_graph((int)survivors.size(), std::move(edges), g.directed, g.parity);
}

bool is_admissible(const DecoratedGraph& g, const std::vector<int>& A,
                   AdmissibleContext context) {
  int n = g.n, l = g.edge_count();
  int a = (int)A.size();
  auto sub_edges = complete_subgraph(g, A).edge_count();
  switch (context) {
    case AdmissibleContext::Collapse2nMinus4:
      if (l != 2 * n - 4) throw std::invalid_argument("is_admissible: need l = 2n-4");
      return 2 <= a && a <= n - 1 && sub_edges == 2 * a - 3;
    case AdmissibleContext::Collapse2nMinus3:
      if (l != 2 * n - 3) throw std::invalid_argument("is_admissible: need l = 2n-3");
      return sub_edges == 2 * a - 3;
    case AdmissibleContext::Partition:
      throw std::invalid_argument("is_admissible: partition context needs a partition");
  }
  return false;
}

bool is_admissible(const DecoratedGraph& g, const std::vector<std::vector<int>>& partition,
                   AdmissibleContext context) {
  if (context != AdmissibleContext::Partition)
    throw std::invalid_argument("is_admissible: partition input needs partition context");
  if (g.edge_count() != 2 * g.n - 3)
    throw std::invalid_argument("is_admissible: need l = 2n-3");
  size_t covered = 0;
  for (const auto& B : partition) {
    int b = (int)B.size();
    if (complete_subgraph(g, B).edge_count() != 2 * b - 2) return false;
    covered += B.size();
  }
  if ((int)covered != g.n) throw std::invalid_argument("is_admissible: not a partition");
  return true;
}

int koszul_sign(const DecoratedGraph& g, const std::vector<int>& A) {
  return koszul_sign(g, std::vector<std::vector<int>>{A});
}

int koszul_sign(const DecoratedGraph& g, const std::vector<std::vector<int>>& blocks) {
  std::vector<int> block_of(g.n + 1, 0);
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int v : blocks[b]) block_of[v] = (int)b + 1;
  // Key of an edge: 0 for cross-block (quotient) edges, block index otherwise.
  std::vector<int> key;
  key.reserve(g.edges.size());
  for (auto [s, t] : g.edges)
    key.push_back(block_of[s] && block_of[s] == block_of[t] ? block_of[s] : 0);
  int sign = g.parity;
  for (size_t i = 0; i < key.size(); ++i)
    for (size_t j = i + 1; j < key.size(); ++j)
      if (key[j] < key[i]) sign = -sign;
  return sign;
}

long long automorphism_count(const DecoratedGraph& g) {
  std::multiset<std::pair<int, int>> reference(g.edges.begin(), g.edges.end());
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 1);
  long long count = 0;
  do {
    auto e = relabel_edges(g.edges, perm, g.directed);
    if (std::multiset<std::pair<int, int>>(e.begin(), e.end()) == reference) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace gcalc::graphs
