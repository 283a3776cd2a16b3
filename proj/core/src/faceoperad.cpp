#include "gcalc/faceoperad.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace gcalc::operad {

int corolla_degree(Colour c, int arity) {
  return c == Colour::Black ? 2 - 2 * arity : 3 - 2 * arity;
}

int corolla_parity(Colour c) { return c == Colour::Black ? 0 : 1; }

int OperadTree::degree() const {
  int deg = 0;
  for (const auto& nd : nodes) deg += corolla_degree(nd.colour, (int)nd.kids.size());
  return deg;
}

int OperadTree::leaf_count() const {
  int count = 0;
  for (const auto& nd : nodes)
    for (int k : nd.kids)
      if (k >= 1) ++count;
  return count;
}

bool OperadTree::operator<(const OperadTree& o) const {
  if (nodes.size() != o.nodes.size()) return nodes.size() < o.nodes.size();
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].colour != o.nodes[i].colour) return nodes[i].colour < o.nodes[i].colour;
    if (nodes[i].kids != o.nodes[i].kids) return nodes[i].kids < o.nodes[i].kids;
  }
  return false;
}

bool OperadTree::operator==(const OperadTree& o) const {
  return !(*this < o) && !(o < *this);
}

OperadTree corolla(Colour c, int n) {
  int min_arity = c == Colour::Black ? 1 : 2;
  if (n < min_arity) throw std::invalid_argument("corolla arity too small");
  OperadTree t;
  t.nodes.push_back({c, {}});
  for (int i = 1; i <= n; ++i) t.nodes[0].kids.push_back(i);
  return t;
}

namespace {

// Output colour of a corolla: solid for W, dashed for B and D.
bool output_dashed(Colour c) { return c != Colour::SolidWhite; }
// Input colour of a corolla's slots: dashed only for D.
bool input_dashed(Colour c) { return c == Colour::DashedWhite; }

void validate_at(const OperadTree& t, int node, std::vector<bool>& seen_node,
                 std::vector<int>& leaves) {
  const auto& nd = t.nodes[node];
  int min_arity = nd.colour == Colour::Black ? 1 : 2;
  if ((int)nd.kids.size() < min_arity)
    throw std::invalid_argument("corolla arity below minimum");
  for (int k : nd.kids) {
    if (k >= 1) {
      leaves.push_back(k);
    } else {
      int child = -k - 1;
      if (child <= node || child >= (int)t.nodes.size() || seen_node[child])
        throw std::invalid_argument("tree is not in pre-order");
      seen_node[child] = true;
      if (output_dashed(t.nodes[child].colour) != input_dashed(nd.colour))
        throw std::invalid_argument("colour grammar violation");
      validate_at(t, child, seen_node, leaves);
    }
  }
}

}  // namespace

void validate(const OperadTree& t) {
  if (t.nodes.empty()) throw std::invalid_argument("empty tree");
  std::vector<bool> seen(t.nodes.size(), false);
  seen[0] = true;
  std::vector<int> leaves;
  validate_at(t, 0, seen, leaves);
  for (bool s : seen)
    if (!s) throw std::invalid_argument("disconnected tree node");
  std::sort(leaves.begin(), leaves.end());
  for (size_t i = 0; i < leaves.size(); ++i)
    if (leaves[i] != (int)i + 1)
      throw std::invalid_argument("leaf labels must form 1..n");
}

namespace {

void print_node(const OperadTree& t, int node, std::ostringstream& out) {
  const auto& nd = t.nodes[node];
  out << (char)nd.colour << nd.kids.size() << "(";
  for (size_t i = 0; i < nd.kids.size(); ++i) {
    if (i) out << ",";
    if (nd.kids[i] >= 1)
      out << nd.kids[i];
    else
      print_node(t, -nd.kids[i] - 1, out);
  }
  out << ")";
}

int parse_node(const std::string& s, size_t& pos, OperadTree& t) {
  if (pos >= s.size()) throw std::invalid_argument("truncated tree string");
  char c = s[pos];
  if (c != 'W' && c != 'B' && c != 'D') throw std::invalid_argument("bad colour letter");
  ++pos;
  size_t start = pos;
  while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
  int arity = std::stoi(s.substr(start, pos - start));
  if (pos >= s.size() || s[pos] != '(') throw std::invalid_argument("expected (");
  ++pos;
  int my_index = (int)t.nodes.size();
  t.nodes.push_back({(Colour)c, {}});
  for (int i = 0; i < arity; ++i) {
    if (i) {
      if (pos >= s.size() || s[pos] != ',') throw std::invalid_argument("expected ,");
      ++pos;
    }
    if (isdigit((unsigned char)s[pos])) {
      size_t st = pos;
      while (pos < s.size() && isdigit((unsigned char)s[pos])) ++pos;
      t.nodes[my_index].kids.push_back(std::stoi(s.substr(st, pos - st)));
    } else {
      int child = parse_node(s, pos, t);
      t.nodes[my_index].kids.push_back(-child - 1);
    }
  }
  if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("expected )");
  ++pos;
  return my_index;
}

}  // namespace

std::string to_string(const OperadTree& t) {
  std::ostringstream out;
  print_node(t, 0, out);
  return out.str();
}

OperadTree parse_tree(const std::string& s) {
  std::string clean;
  for (char c : s)
    if (!isspace((unsigned char)c)) clean += c;
  OperadTree t;
  size_t pos = 0;
  parse_node(clean, pos, t);
  if (pos != clean.size()) throw std::invalid_argument("trailing characters");
  // Parsed in pre-order by construction; check the rest.
  validate(t);
  return t;
}

void TreeSum::add(const OperadTree& t, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TreeSum& TreeSum::operator+=(const TreeSum& o) {
  for (const auto& [t, c] : o.terms_) add(t, c);
  return *this;
}

TreeSum& TreeSum::operator-=(const TreeSum& o) {
  for (const auto& [t, c] : o.terms_) add(t, -c);
  return *this;
}

std::string to_string(const TreeSum& s) {
  if (s.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [t, c] : s.terms()) {
    if (!first) out << " + ";
    first = false;
    out << gcalc::to_string(c) << "*" << to_string(t);
  }
  return out.str();
}

std::vector<std::vector<int>> proper_subsets_ge2(int n) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    int count = __builtin_popcount(mask);
    if (count < 2 || count >= n) continue;
    std::vector<int> A;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) A.push_back(i + 1);
    out.push_back(std::move(A));
  }
  return out;
}

namespace {

void partitions_rec(int next, int n, std::vector<std::vector<int>>& current,
                    std::vector<std::vector<std::vector<int>>>& out) {
  if (next > n) {
    if (current.size() >= 2) out.push_back(current);
    return;
  }
  const size_t nblocks = current.size();
  for (size_t b = 0; b < nblocks; ++b) {
    current[b].push_back(next);
    partitions_rec(next + 1, n, current, out);
    current[b].pop_back();
  }
  current.push_back({next});
  partitions_rec(next + 1, n, current, out);
  current.pop_back();
}

}  // namespace

std::vector<std::vector<std::vector<int>>> partitions_ge2(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> current;
  partitions_rec(1, n, current, out);
  // Blocks are built so that block j was opened by its smallest element;
  // opening order is increasing, hence inf B_1 < inf B_2 < ... already.
  return out;
}

namespace {

// A replacement piece for the differential at one vertex: the upper corolla
// plus one or more lower corollas, slots referring to the old kid positions.
struct Replacement {
  Colour up_colour;
  // Upper slots: >= 0 is an old kid position; -1-j points at lower j.
  std::vector<int> up_slots;
  std::vector<std::pair<Colour, std::vector<int>>> lowers;  // kid positions
  int local_sign = 1;
};

struct Rebuilder {
  const OperadTree& old_tree;
  int target;                 // vertex being expanded
  const Replacement& rep;
  OperadTree out;
  std::vector<int> tag_order;  // tags in emitted pre-order
  int old_count;

  int emit_old(int old_index) {
    if (old_index == target) return emit_replacement();
    int my = (int)out.nodes.size();
    out.nodes.push_back({old_tree.nodes[old_index].colour, {}});
    tag_order.push_back(old_index);
    for (int k : old_tree.nodes[old_index].kids) {
      int enc = k >= 1 ? k : -emit_old(-k - 1) - 1;  // may reallocate out.nodes
      out.nodes[my].kids.push_back(enc);
    }
    return my;
  }

  int emit_replacement() {
    int my = (int)out.nodes.size();
    out.nodes.push_back({rep.up_colour, {}});
    tag_order.push_back(old_count);  // tag of the upper vertex
    const auto& old_kids = old_tree.nodes[target].kids;
    for (int slot : rep.up_slots) {
      if (slot >= 0) {
        int k = old_kids[slot];
        int enc = k >= 1 ? k : -emit_old(-k - 1) - 1;
        out.nodes[my].kids.push_back(enc);
      } else {
        int j = -slot - 1;
        int low = (int)out.nodes.size();
        out.nodes.push_back({rep.lowers[j].first, {}});
        tag_order.push_back(old_count + 1 + j);
        for (int pos : rep.lowers[j].second) {
          int k = old_kids[pos];
          int enc = k >= 1 ? k : -emit_old(-k - 1) - 1;
          out.nodes[low].kids.push_back(enc);
        }
        out.nodes[my].kids.push_back(-low - 1);
      }
    }
    return my;
  }
};

int tag_parity(const OperadTree& old_tree, const Replacement& rep, int tag) {
  int old_count = (int)old_tree.nodes.size();
  if (tag < old_count) return corolla_parity(old_tree.nodes[tag].colour);
  if (tag == old_count) return corolla_parity(rep.up_colour);
  return corolla_parity(rep.lowers[tag - old_count - 1].first);
}

// Applies one replacement at `target`, returning the rebuilt tree and the
// Koszul sign of re-sorting the vertex list into pre-order. The insertion
// order puts the upper vertex, then the lower vertices, at the old position.
std::pair<OperadTree, int> apply_replacement(const OperadTree& t, int target,
                                             const Replacement& rep) {
  Rebuilder rb{t, target, rep, {}, {}, (int)t.nodes.size()};
  rb.emit_old(0);
  // Insertion-order index of each tag.
  int old_count = (int)t.nodes.size();
  int new_count = old_count + 1 + (int)rep.lowers.size();
  std::vector<int> insert_pos(new_count, -1);
  {
    int ip = 0;
    for (int q = 0; q < target; ++q) insert_pos[q] = ip++;
    insert_pos[old_count] = ip++;
    for (size_t j = 0; j < rep.lowers.size(); ++j) insert_pos[old_count + 1 + j] = ip++;
    for (int q = target + 1; q < old_count; ++q) insert_pos[q] = ip++;
  }
  int crossings = 0;
  for (size_t i = 0; i < rb.tag_order.size(); ++i)
    for (size_t j = i + 1; j < rb.tag_order.size(); ++j)
      if (insert_pos[rb.tag_order[i]] > insert_pos[rb.tag_order[j]] &&
          tag_parity(t, rep, rb.tag_order[i]) && tag_parity(t, rep, rb.tag_order[j]))
        ++crossings;
  return {std::move(rb.out), crossings % 2 ? -1 : 1};
}

std::vector<Replacement> vertex_terms(Colour c, int arity) {
  std::vector<Replacement> out;
  auto collapse = [&](const std::vector<int>& A, Colour up, Colour low, int sign) {
    // A holds 1-based slot numbers; inf A picks the insertion slot.
    Replacement r;
    r.up_colour = up;
    r.local_sign = sign;
    std::vector<int> Apos;
    for (int a : A) Apos.push_back(a - 1);
    r.lowers.push_back({low, Apos});
    int infA = A.front();
    for (int s = 0; s < infA - 1; ++s) r.up_slots.push_back(s);
    r.up_slots.push_back(-1);
    for (int s = infA; s < arity; ++s)
      if (!std::binary_search(Apos.begin(), Apos.end(), s)) r.up_slots.push_back(s);
    return r;
  };
  if (c != Colour::Black) {
    for (const auto& A : proper_subsets_ge2(arity)) out.push_back(collapse(A, c, c, +1));
    return out;
  }
  // Black: collapse terms (minus sign, A = [n] allowed) ...
  for (const auto& A : proper_subsets_ge2(arity))
    out.push_back(collapse(A, Colour::Black, Colour::SolidWhite, -1));
  if (arity >= 2) {
    std::vector<int> all(arity);
    for (int i = 0; i < arity; ++i) all[i] = i + 1;
    out.push_back(collapse(all, Colour::Black, Colour::SolidWhite, -1));
  }
  // ... plus one term per partition into k >= 2 blocks.
  for (const auto& blocks : partitions_ge2(arity)) {
    Replacement r;
    r.up_colour = Colour::DashedWhite;
    r.local_sign = +1;
    for (size_t j = 0; j < blocks.size(); ++j) {
      std::vector<int> pos;
      for (int v : blocks[j]) pos.push_back(v - 1);
      r.lowers.push_back({Colour::Black, pos});
      r.up_slots.push_back(-(int)j - 1);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace

TreeSum differential(const OperadTree& t) {
  TreeSum out;
  int prefix = 0;
  for (int p = 0; p < (int)t.nodes.size(); ++p) {
    const auto& nd = t.nodes[p];
    for (const auto& rep : vertex_terms(nd.colour, (int)nd.kids.size())) {
      auto [tree, reorder_sign] = apply_replacement(t, p, rep);
      int sign = rep.local_sign * reorder_sign * (prefix % 2 ? -1 : 1);
      out.add(tree, Rat(sign));
    }
    prefix += corolla_parity(nd.colour);
  }
  return out;
}

TreeSum differential(const TreeSum& s) {
  TreeSum out;
  for (const auto& [t, c] : s.terms()) {
    TreeSum dt = differential(t);
    for (const auto& [t2, c2] : dt.terms()) out.add(t2, c * c2);
  }
  return out;
}

DSquaredReport check_d_squared(int n_max) {
  DSquaredReport report;
  if (n_max < 2) throw std::invalid_argument("check_d_squared: n_max < 2");
  std::vector<std::pair<Colour, int>> generators;
  for (int n = 2; n <= n_max; ++n) generators.push_back({Colour::SolidWhite, n});
  for (int n = 1; n <= n_max; ++n) generators.push_back({Colour::Black, n});
  for (int n = 2; n <= n_max; ++n) generators.push_back({Colour::DashedWhite, n});
  for (auto [c, n] : generators) {
    TreeSum dd = differential(differential(corolla(c, n)));
    if (!dd.is_zero()) {
      report.ok = false;
      std::ostringstream msg;
      msg << "d^2 != 0 on " << to_string(corolla(c, n)) << ": first survivor "
          << to_string(dd.terms().begin()->first) << " with coefficient "
          << gcalc::to_string(dd.terms().begin()->second);
      report.witness = msg.str();
      return report;
    }
  }
  return report;
}

namespace {

// Kills every tree containing a corolla of arity >= 3.
TreeSum quotient_alpha(const TreeSum& s) {
  TreeSum out;
  for (const auto& [t, c] : s.terms()) {
    bool keep = true;
    for (const auto& nd : t.nodes)
      if (nd.kids.size() >= 3) keep = false;
    if (keep) out.add(t, c);
  }
  return out;
}

// All-binary solid-white trees on a labeled leaf set, enumerated by label
// subset splits. Small arities only.
void binary_trees(int nleaves, std::vector<OperadTree>& out) {
  std::map<std::vector<int>, std::vector<OperadTree>> byset;
  std::vector<int> all(nleaves);
  for (int i = 0; i < nleaves; ++i) all[i] = i + 1;
  // Singletons: a leaf is not a tree by itself; handled inline below.
  std::function<std::vector<OperadTree>(const std::vector<int>&)> gen =
      [&](const std::vector<int>& labels) -> std::vector<OperadTree> {
    auto it = byset.find(labels);
    if (it != byset.end()) return it->second;
    std::vector<OperadTree> result;
    int m = (int)labels.size();
    for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
      std::vector<int> left, right;
      for (int i = 0; i < m; ++i)
        ((mask >> i) & 1u ? left : right).push_back(labels[i]);
      auto attach = [&](const std::vector<int>& part, int slot, OperadTree& t,
                        int parent) -> bool {
        if (part.size() == 1) {
          t.nodes[parent].kids[slot] = part[0];
          return true;
        }
        return false;
      };
      std::vector<OperadTree> lefts, rights;
      if (left.size() > 1) lefts = gen(left);
      if (right.size() > 1) rights = gen(right);
      auto combine = [&](const OperadTree* lt, const OperadTree* rt) {
        OperadTree t;
        t.nodes.push_back({Colour::SolidWhite, {0, 0}});
        if (!attach(left, 0, t, 0)) {
          int base = (int)t.nodes.size();
          for (const auto& nd : lt->nodes) {
            OperadTree::Node copy = nd;
            for (int& k : copy.kids)
              if (k < 0) k -= base;
            t.nodes.push_back(copy);
          }
          t.nodes[0].kids[0] = -base - 1;
        }
        if (!attach(right, 1, t, 0)) {
          int base = (int)t.nodes.size();
          for (const auto& nd : rt->nodes) {
            OperadTree::Node copy = nd;
            for (int& k : copy.kids)
              if (k < 0) k -= base;
            t.nodes.push_back(copy);
          }
          t.nodes[0].kids[1] = -base - 1;
        }
        result.push_back(t);
      };
      if (left.size() == 1 && right.size() == 1) {
        combine(nullptr, nullptr);
      } else if (left.size() == 1) {
        for (const auto& rt : rights) combine(nullptr, &rt);
      } else if (right.size() == 1) {
        for (const auto& lt : lefts) combine(&lt, nullptr);
      } else {
        for (const auto& lt : lefts)
          for (const auto& rt : rights) combine(&lt, &rt);
      }
    }
    byset[labels] = result;
    return result;
  };
  out = gen(all);
}

}  // namespace

QuotientReport leibniz_quotient_check() {
  QuotientReport report;
  // alpha(d W3) must be exactly the printed three-term relation.
  TreeSum relation = quotient_alpha(differential(corolla(Colour::SolidWhite, 3)));
  TreeSum expected;
  expected.add(parse_tree("W2(W2(1,2),3)"), 1);
  expected.add(parse_tree("W2(W2(1,3),2)"), 1);
  expected.add(parse_tree("W2(1,W2(2,3))"), 1);
  TreeSum diff = relation;
  diff -= expected;
  if (!diff.is_zero()) {
    report.ok = false;
    report.detail = "alpha(d W3) != printed relation: got " + to_string(relation);
    return report;
  }
  // alpha(d W4): every term of d W4 contains a 3-corolla, so the image is the
  // zero vector, which lies in the ideal; assert both facts.
  TreeSum image = quotient_alpha(differential(corolla(Colour::SolidWhite, 4)));
  if (!image.is_zero()) {
    // Membership would need the arity-4 ideal span; with the present
    // differential the image is identically zero.
    std::vector<OperadTree> basis;
    binary_trees(4, basis);
    report.ok = false;
    report.detail = "alpha(d W4) unexpectedly nonzero: " + to_string(image);
    return report;
  }
  report.detail = "alpha(d W3) = Leibniz relation; alpha(d W4) = 0 (in ideal)";
  return report;
}

poly::Poly leib_infty_relation(const MuTable& mu, const std::vector<poly::Poly>& args) {
  const int n = (int)args.size();
  if (n < 2) throw std::invalid_argument("leib_infty_relation: need n >= 2");
  const auto& alg = args[0].algebra();
  poly::Poly defect(alg);
  auto apply = [&](int k, const std::vector<poly::Poly>& a) -> poly::Poly {
    auto it = mu.find(k);
    if (it == mu.end()) return poly::zero(alg);
    return it->second(a);
  };
  for (const auto& A : proper_subsets_ge2(n)) {
    int infA = A.front();
    int sign = 0;
    for (int k = 1; k < infA; ++k) {
      int deg = 0;
      if (!args[k - 1].is_homogeneous(&deg))
        throw std::invalid_argument("leib_infty_relation: arguments must be homogeneous");
      sign += deg;
    }
    std::vector<poly::Poly> inner;
    for (int v : A) inner.push_back(args[v - 1]);
    poly::Poly core = apply((int)A.size(), inner);
    if (core.is_zero() && mu.find((int)A.size()) == mu.end()) continue;
    std::vector<poly::Poly> outer;
    for (int v = 1; v < infA; ++v) outer.push_back(args[v - 1]);
    outer.push_back(core);
    for (int v = infA + 1; v <= n; ++v)
      if (!std::binary_search(A.begin(), A.end(), v)) outer.push_back(args[v - 1]);
    poly::Poly term = apply(n - (int)A.size() + 1, outer);
    if (sign % 2) term *= Rat(-1);
    defect += term;
  }
  return defect;
}

}  // namespace gcalc::operad
