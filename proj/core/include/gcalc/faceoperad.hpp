#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcalc/polyfields.hpp"
#include "gcalc/rational.hpp"

namespace gcalc::operad {

// Corolla colours of the two fundamental-chain operads. Solid white ('W') and
// dashed white ('D') corollas have arity >= 2 and degree 3-2n (odd); black
// ('B') corollas have arity >= 1 and degree 2-2n (even). In trees, dashed
// corollas sit above black ones, black above solid white.
enum class Colour : char { SolidWhite = 'W', Black = 'B', DashedWhite = 'D' };

int corolla_degree(Colour c, int arity);
int corolla_parity(Colour c);  // 0 even, 1 odd

// A rooted tree of corollas in pre-order. Children are encoded per slot:
// value >= 1 is the leaf with that label, value <= -1 refers to node -v-1.
struct OperadTree {
  struct Node {
    Colour colour;
    std::vector<int> kids;
  };
  std::vector<Node> nodes;

  int degree() const;
  int leaf_count() const;
  bool operator<(const OperadTree& o) const;
  bool operator==(const OperadTree& o) const;
};

// Single corolla with leaves 1..n.
OperadTree corolla(Colour c, int n);

// Checks arities, pre-order layout, leaf labels forming 1..n, and the colour
// grammar (solid under black inputs, dashed above black; no black under
// white).
void validate(const OperadTree& t);

// `W3(1,W2(2,3),4)`; `B`, `D` prefixes for black and dashed corollas.
std::string to_string(const OperadTree& t);
OperadTree parse_tree(const std::string& s);

// Formal rational combination of trees in canonical (pre-order) vertex order.
class TreeSum {
 public:
  TreeSum() = default;
  void add(const OperadTree& t, const Rat& c);
  const std::map<OperadTree, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  TreeSum& operator+=(const TreeSum& o);
  TreeSum& operator-=(const TreeSum& o);

 private:
  std::map<OperadTree, Rat> terms_;
};

std::string to_string(const TreeSum& s);

// The face-complex differential, Leibniz-extended over the tree with Koszul
// signs in the pre-order vertex listing. On a white (either colour) n-corolla
// it collapses every proper A with #A >= 2 into a lower corolla at slot
// inf A; on a black corolla it produces the same collapse terms with a minus
// sign (now allowing A = [n]) plus one term per partition of [n] into k >= 2
// blocks ordered by their infima.
TreeSum differential(const OperadTree& t);
TreeSum differential(const TreeSum& s);

struct DSquaredReport {
  bool ok = true;
  std::string witness;  // first non-cancelling pair on failure
};

// Asserts d(d(corolla)) = 0 for every generator of arity <= n_max in both
// Leib-infinity (solid white) and Mor(Leib-infinity) (all three colours).
DSquaredReport check_d_squared(int n_max);

struct QuotientReport {
  bool ok = true;
  std::string detail;
};

// The morphism onto the quadratic operad: the 3-corolla maps to the printed
// three-term relation and the image of the 4-corolla differential lies in the
// operadic ideal the relation generates.
QuotientReport leibniz_quotient_check();

// Table of multilinear operations mu_k; absent entries are zero.
using MuTable = std::map<int, std::function<poly::Poly(const std::vector<poly::Poly>&)>>;

// Evaluates the homotopy-Leibniz relation defect at the arity of `args`
// (minimal case, so the left-hand side d mu_n is zero):
//   sum_{A proper, #A>=2} (-1)^{sum_{k<inf A}|g_k|}
//       mu_{n-#A+1}(g_1,...,g_{inf A -1}, mu_{#A}(g_A), g_rest).
poly::Poly leib_infty_relation(const MuTable& mu, const std::vector<poly::Poly>& args);

// Proper subsets of [n] with at least two elements, in a fixed order.
std::vector<std::vector<int>> proper_subsets_ge2(int n);
// Partitions of [n] into k >= 2 blocks, each listed with inf B_1 < ... .
std::vector<std::vector<std::vector<int>>> partitions_ge2(int n);

}  // namespace gcalc::operad
