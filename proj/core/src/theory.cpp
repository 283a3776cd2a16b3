#include "gcalc/theory.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "gcalc/numbers.hpp"

namespace gcalc::theory {

HSeries hseries(const poly::Poly& constant_term, int order) {
  HSeries out((size_t)order + 1, poly::zero(constant_term.algebra()));
  out[0] = constant_term;
  return out;
}

HSeries series_add(const HSeries& a, const HSeries& b) {
  HSeries out = a;
  out.resize(std::max(a.size(), b.size()),
             poly::zero((a.empty() ? b : a)[0].algebra()));
  for (size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}

HSeries series_schouten(const HSeries& a, const HSeries& b) {
  if (a.empty() || b.empty()) return {};
  size_t order = std::max(a.size(), b.size()) - 1;
  HSeries out(order + 1, poly::zero(a[0].algebra()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size() && i + j <= order; ++j)
      out[i + j] += poly::schouten(a[i], b[j]);
  return out;
}

bool series_is_zero(const HSeries& a) {
  for (const auto& p : a)
    if (!p.is_zero()) return false;
  return true;
}

bool is_maurer_cartan_degree(const HSeries& a) {
  for (const auto& p : a) {
    int deg = 0;
    if (!p.is_homogeneous(&deg)) return false;
    if (!p.is_zero() && deg != 2) return false;
  }
  return true;
}

mc::ExactTable omega0_c_table() {
  mc::ExactTable table;
  table.set(graphs::parse_graph("2;1;1>2"), Rat(1));
  table.set(graphs::parse_graph("2;1;2>1"), Rat(1));
  return table;
}

mc::ExactTable kontsevich_outer_c_table() {
  mc::ExactTable table = omega0_c_table();
  const std::vector<std::string> printed = {
      "4;5;3>1,3>2,4>1,4>2,2>1",
      "4;5;4>2,4>3,3>1,2>1,3>2",
      "4;5;4>1,3>1,4>2,3>2,4>3",
  };
  Rat twelfth(1, 12);
  std::vector<int> perm(4);
  for (const auto& text : printed) {
    auto base = graphs::parse_graph(text);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<std::pair<int, int>> edges;
      for (auto [s, t] : base.edges) edges.emplace_back(perm[s - 1], perm[t - 1]);
      table.set(graphs::make_graph(4, edges, true), twelfth);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return table;
}

poly::Poly HomotopyStructure::mu(const std::vector<poly::Poly>& args) const {
  const int n = (int)args.size();
  poly::Poly out(args[0].algebra());
  if (n < 2 || n > max_n || !table.has_arity(n)) return out;
  for (const auto& cls : graphs::enumerate_graphs(n, 2 * n - 3, true)) {
    Rat weight = table.lookup(cls.representative);
    if (weight == 0) continue;
    out += poly::phi(cls.representative, args) * weight;
  }
  return out;
}

std::vector<graphs::DecoratedGraph> HomotopyStructure::support(int n) const {
  std::vector<graphs::DecoratedGraph> out;
  if (n < 2 || n > max_n || !table.has_arity(n)) return out;
  for (const auto& cls : graphs::enumerate_graphs(n, 2 * n - 3, true))
    if (table.lookup(cls.representative) != 0) out.push_back(cls.representative);
  return out;
}

HomotopyStructure build_mu(mc::ExactTable table, int max_n) {
  HomotopyStructure structure;
  structure.table = std::move(table);
  structure.max_n = max_n;
  // Symmetric (Lie-infinity) when the weights are invariant under vertex
  // relabeling, orientation signs included.
  structure.symmetric = true;
  for (int n = 2; n <= max_n && structure.symmetric; ++n) {
    if (!structure.table.has_arity(n)) continue;
    for (const auto& cls : graphs::enumerate_graphs(n, 2 * n - 3, true)) {
      Rat w = structure.table.lookup(cls.representative);
      if (w == 0) continue;
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 1);
      do {
        std::vector<std::pair<int, int>> edges;
        for (auto [s, t] : cls.representative.edges)
          edges.emplace_back(perm[s - 1], perm[t - 1]);
        if (structure.table.lookup(graphs::make_graph(n, edges, true)) != w) {
          structure.symmetric = false;
          break;
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!structure.symmetric) break;
    }
  }
  return structure;
}

poly::Poly MorphismF::apply(const std::vector<poly::Poly>& args) const {
  const int n = (int)args.size();
  if (n == 1) return args[0];
  poly::Poly out(args[0].algebra());
  if (n > max_n || !table.has_arity(n)) return out;
  for (const auto& cls : graphs::enumerate_graphs(n, 2 * n - 2, true)) {
    Rat weight = table.lookup(cls.representative);
    if (weight == 0) continue;
    out += poly::phi(cls.representative, args) * weight;
  }
  return out;
}

MorphismF build_morphism(mc::ExactTable C_table, int max_n) {
  return MorphismF{std::move(C_table), max_n};
}

HSeries transform_mc(const MorphismF& F, const HSeries& alpha, int order) {
  if (alpha.empty()) throw std::invalid_argument("transform_mc: empty series");
  if (!is_maurer_cartan_degree(alpha))
    throw std::invalid_argument("transform_mc: input must have total degree 2");
  const auto& alg = alpha[0].algebra();
  HSeries out(alpha.begin(),
              alpha.begin() + std::min(alpha.size(), (size_t)order + 1));
  out.resize((size_t)order + 1, poly::zero(alg));
  for (int n = 2; n <= order + 1 && n <= F.max_n; ++n) {
    if (!F.table.has_arity(n)) continue;
    for (const auto& cls : graphs::enumerate_graphs_unlabeled(n, 2 * n - 2, true)) {
      Rat weight = F.table.lookup(cls.representative);
      if (weight == 0) continue;
      weight /= Rat(graphs::automorphism_count(cls.representative));
      // hbar^{n-1} from the graph plus the hbar content of the argument
      // slots; alpha plugged into every slot, truncated at `order`.
      std::vector<size_t> powers(n, 0);
      std::function<void(int, int)> assign = [&](int slot, int used) {
        if (slot == n) {
          std::vector<poly::Poly> args;
          for (int v = 0; v < n; ++v) args.push_back(alpha[powers[v]]);
          out[(size_t)(n - 1 + used)] += poly::phi(cls.representative, args) * weight;
          return;
        }
        for (size_t p = 0; p < alpha.size(); ++p) {
          if (n - 1 + used + (int)p > order) break;
          powers[slot] = p;
          assign(slot + 1, used + (int)p);
        }
      };
      assign(0, 0);
    }
  }
  return out;
}

std::vector<std::vector<poly::Poly>> bivector_components(const poly::Poly& p) {
  const auto& alg = p.algebra();
  if (alg.copies != 1) throw std::invalid_argument("bivector_components: one copy only");
  for (int a = 1; a <= alg.grading.d; ++a)
    if (alg.grading.xdeg(a) != 0)
      throw std::invalid_argument("bivector_components: all-even grading required");
  int deg = 0;
  if (!p.is_homogeneous(&deg) || (!p.is_zero() && deg != 2))
    throw std::invalid_argument("bivector_components: not a bivector");
  const int d = alg.grading.d;
  std::vector<std::vector<poly::Poly>> comp(d + 1,
                                            std::vector<poly::Poly>(d + 1, poly::zero(alg)));
  for (int a = 1; a <= d; ++a)
    for (int b = 1; b <= d; ++b)
      comp[a][b] = poly::derivative_psi(poly::derivative_psi(p, a), b);
  return comp;
}

namespace {

// d^n f / dx^{k_1} ... dx^{k_n} for multi-indices over [d]; cached per level.
poly::Poly iterated_dx(const poly::Poly& f, const std::vector<int>& ks) {
  poly::Poly out = f;
  for (int k : ks) out = poly::derivative_x(out, k);
  return out;
}

void multi_indices(int d, int n, std::vector<std::vector<int>>& out) {
  std::vector<int> idx(n, 1);
  while (true) {
    out.push_back(idx);
    int i = n - 1;
    while (i >= 0 && idx[i] == d) idx[i--] = 1;
    if (i < 0) break;
    ++idx[i];
  }
}

}  // namespace

poly::Poly wheel_contraction(const poly::Poly& bivector, int n) {
  if (n < 2) throw std::invalid_argument("wheel_contraction: n < 2");
  const auto& alg = bivector.algebra();
  auto comp = bivector_components(bivector);
  const int d = alg.grading.d;
  poly::Poly out(alg);
  std::vector<std::vector<int>> ks, ls;
  multi_indices(d, n, ks);
  ls = ks;
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      poly::Poly accum_ij(alg);
      for (const auto& k : ks) {
        poly::Poly center = iterated_dx(comp[i][j], k);
        if (center.is_zero()) continue;
        for (const auto& l : ls) {
          poly::Poly rim = center;
          for (int m = 0; m < n && !rim.is_zero(); ++m) {
            // d a^{k_m l_m} / dx^{l_{m+1}}, cyclically.
            rim = poly::mul(rim, poly::derivative_x(comp[k[m]][l[m]], l[(m + 1) % n]));
          }
          accum_ij += rim;
        }
      }
      if (accum_ij.is_zero()) continue;
      out += poly::mul(poly::mul(accum_ij, poly::psi(alg, i)), poly::psi(alg, j));
    }
  int sgn = (n * (n - 1) / 2) % 2 ? -1 : 1;
  out *= Rat(-sgn, 2);
  return out;
}

HSeries wheel_series(const poly::Poly& bivector, const std::function<Rat(int)>& coeff,
                     int order) {
  HSeries out = hseries(bivector, order);
  for (int n = 2; n <= order; ++n) {
    Rat c = coeff(n);
    if (c == 0) continue;
    out[(size_t)n] += wheel_contraction(bivector, n) * (c / Rat(n));
  }
  return out;
}

Rat duflo_exponent_coefficient(DufloVariant v, int n) {
  if (n < 2 || n % 2) return Rat(0);
  // zeta(n)/(n (2 pi i)^n) = -B_n/(2 n n!) for even n by Euler's formula.
  return v == DufloVariant::Bernoulli ? script_bernoulli(n) : -script_bernoulli(n);
}

namespace {

struct LinearPoisson {
  // alpha[i][j][k]: coefficient of x^k in the (i,j) component.
  std::vector<std::vector<std::vector<Rat>>> alpha;
  int d = 0;
};

LinearPoisson linear_components(const poly::Poly& gamma2) {
  const auto& alg = gamma2.algebra();
  auto comp = bivector_components(gamma2);
  const int d = alg.grading.d;
  LinearPoisson out;
  out.d = d;
  out.alpha.assign(d + 1, std::vector<std::vector<Rat>>(d + 1, std::vector<Rat>(d + 1, 0)));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      for (const auto& [m, c] : comp[i][j].terms()) {
        int which = 0, total = 0;
        for (int a = 1; a <= d; ++a) {
          total += m[alg.xgen(0, a)];
          if (m[alg.xgen(0, a)] == 1) which = a;
        }
        if (total != 1)
          throw std::invalid_argument("duflo: gamma2 must be linear in x");
        out.alpha[i][j][which] = c;
      }
    }
  return out;
}

// T_n f = sum d^n f/dx^{k_1..k_n} alpha^{k_1 l_1}_{l_2} ... alpha^{k_n l_n}_{l_1}.
poly::Poly trace_contraction(const LinearPoisson& lp, const poly::Poly& f, int n) {
  const auto& alg = f.algebra();
  const int d = lp.d;
  std::vector<std::vector<int>> ks, ls;
  multi_indices(d, n, ks);
  ls = ks;
  poly::Poly out(alg);
  for (const auto& k : ks) {
    poly::Poly df = iterated_dx(f, k);
    if (df.is_zero()) continue;
    Rat factor = 0;
    for (const auto& l : ls) {
      Rat prod = 1;
      for (int m = 0; m < n && prod != 0; ++m)
        prod *= lp.alpha[k[m]][l[m]][l[(m + 1) % n]];
      factor += prod;
    }
    if (factor != 0) out += df * factor;
  }
  return out;
}

void duflo_preconditions(const poly::Poly& gamma2, const poly::Poly& gamma0) {
  int deg = 0;
  if (!gamma0.is_homogeneous(&deg) || (!gamma0.is_zero() && deg != 0))
    throw std::invalid_argument("duflo: gamma0 must be a plain polynomial");
  if (!poly::schouten(gamma2, gamma0).is_zero())
    throw std::invalid_argument("duflo: gamma0 is not invariant ([gamma2, gamma0] != 0)");
}

}  // namespace

HSeries duflo_transform(const poly::Poly& gamma2, const poly::Poly& gamma0,
                        DufloVariant v, int order) {
  duflo_preconditions(gamma2, gamma0);
  auto lp = linear_components(gamma2);
  const auto& alg = gamma2.algebra();
  // exp(sum_n e_n hbar^n T_n) gamma0, truncated: iterate the hbar-graded
  // operator; constant-coefficient contractions commute.
  HSeries acted = hseries(gamma0, order);
  HSeries result = hseries(gamma0, order);
  for (int power = 1; power * 2 <= order; ++power) {
    HSeries next((size_t)order + 1, poly::zero(alg));
    for (int n = 2; n <= order; n += 2) {
      Rat e = duflo_exponent_coefficient(v, n);
      if (e == 0) continue;
      for (int k = 0; k + n <= order; ++k) {
        if (acted[(size_t)k].is_zero()) continue;
        next[(size_t)(k + n)] += trace_contraction(lp, acted[(size_t)k], n) * e;
      }
    }
    // next = (E acted)/power, so after m rounds the 1/m! has accumulated.
    for (int k = 0; k <= order; ++k) next[(size_t)k] *= Rat(1, power);
    bool all_zero = true;
    for (int k = 0; k <= order; ++k) {
      result[(size_t)k] += next[(size_t)k];
      if (!next[(size_t)k].is_zero()) all_zero = false;
    }
    acted = std::move(next);
    if (all_zero) break;
  }
  result[0] += gamma2;
  return result;
}

HSeries duflo_wheel_route(const poly::Poly& gamma2, const poly::Poly& gamma0,
                          DufloVariant v, int order) {
  duflo_preconditions(gamma2, gamma0);
  const auto& alg = gamma2.algebra();
  // Phi on the wheel with gamma2 at the rim and f at the hub acts on f as
  // -(-1)^{n(n-1)/2} T_n; the weights below make the exponent match the
  // printed trace series.
  auto wheel_op = [&](const poly::Poly& f, int n) -> poly::Poly {
    std::vector<poly::Poly> args((size_t)n, gamma2);
    args.push_back(f);
    return poly::phi(graphs::wheel(n), args);
  };
  HSeries acted = hseries(gamma0, order);
  HSeries result = hseries(gamma0, order);
  for (int power = 1; power * 2 <= order; ++power) {
    HSeries next((size_t)order + 1, poly::zero(alg));
    for (int n = 2; n <= order; n += 2) {
      Rat e = duflo_exponent_coefficient(v, n);
      if (e == 0) continue;
      int sgn = (n * (n - 1) / 2) % 2 ? -1 : 1;
      Rat scale = e * Rat(-sgn);  // e_n = (C'_n / n) * (-(-1)^{n(n-1)/2})
      for (int k = 0; k + n <= order; ++k) {
        if (acted[(size_t)k].is_zero()) continue;
        next[(size_t)(k + n)] += wheel_op(acted[(size_t)k], n) * scale;
      }
    }
    for (int k = 0; k <= order; ++k) next[(size_t)k] *= Rat(1, power);
    bool all_zero = true;
    for (int k = 0; k <= order; ++k) {
      result[(size_t)k] += next[(size_t)k];
      if (!next[(size_t)k].is_zero()) all_zero = false;
    }
    acted = std::move(next);
    if (all_zero) break;
  }
  result[0] += gamma2;
  return result;
}

poly::Poly tetrahedron_flow(const poly::Poly& bivector, bool include_second_term) {
  const auto& alg = bivector.algebra();
  auto comp = bivector_components(bivector);
  const int d = alg.grading.d;
  poly::Poly out(alg);
  auto dx = [&](const poly::Poly& f, std::initializer_list<int> ks) {
    poly::Poly g = f;
    for (int k : ks) g = poly::derivative_x(g, k);
    return g;
  };
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= d; ++j) {
      poly::Poly acc(alg);
      for (int k = 1; k <= d; ++k)
        for (int l = 1; l <= d; ++l)
          for (int m = 1; m <= d; ++m) {
            poly::Poly c3 = dx(comp[i][j], {k, l, m});
            if (c3.is_zero()) continue;
            for (int kp = 1; kp <= d; ++kp)
              for (int lp = 1; lp <= d; ++lp)
                for (int mp = 1; mp <= d; ++mp) {
                  poly::Poly t = poly::mul(c3, dx(comp[k][kp], {lp}));
                  if (t.is_zero()) continue;
                  t = poly::mul(t, dx(comp[l][lp], {mp}));
                  if (t.is_zero()) continue;
                  t = poly::mul(t, dx(comp[m][mp], {kp}));
                  acc += t;
                }
          }
      if (include_second_term) {
        for (int k = 1; k <= d; ++k)
          for (int l = 1; l <= d; ++l)
            for (int m = 1; m <= d; ++m)
              for (int kp = 1; kp <= d; ++kp)
                for (int lp = 1; lp <= d; ++lp)
                  for (int mp = 1; mp <= d; ++mp) {
                    poly::Poly t = dx(comp[i][m], {k, l});
                    if (t.is_zero()) continue;
                    t = poly::mul(t, dx(comp[k][kp], {lp}));
                    if (t.is_zero()) continue;
                    t = poly::mul(t, dx(comp[l][lp], {mp}));
                    if (t.is_zero()) continue;
                    t = poly::mul(t, dx(comp[j][mp], {kp, m}));
                    acc += t * Rat(4, 3);
                  }
      }
      if (acc.is_zero()) continue;
      out += poly::mul(poly::mul(acc, poly::psi(alg, i)), poly::psi(alg, j));
    }
  return out;
}

}  // namespace gcalc::theory
