#include "gcalc/polyfields.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace gcalc::poly {

Grading::Grading(int dim, std::vector<int> deg) : d(dim), degrees(std::move(deg)) {
  if (d < 0) throw std::invalid_argument("negative dimension");
  if (degrees.empty()) degrees.assign(d, 0);
  if ((int)degrees.size() != d) throw std::invalid_argument("grading size mismatch");
}

void Poly::add_term(const Mono& m, const Rat& c) {
  if ((int)m.size() != alg_.gens()) throw std::invalid_argument("monomial size mismatch");
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  if (!(alg_ == o.alg_)) throw std::invalid_argument("algebra mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!(alg_ == o.alg_)) throw std::invalid_argument("algebra mismatch");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out(alg_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

int Poly::term_degree(const Mono& m) const {
  int deg = 0;
  for (int g = 0; g < alg_.gens(); ++g) deg += (int)m[g] * alg_.degree(g);
  return deg;
}

bool Poly::is_homogeneous(int* degree) const {
  if (terms_.empty()) {
    if (degree) *degree = 0;
    return true;
  }
  int d0 = term_degree(terms_.begin()->first);
  for (const auto& [m, c] : terms_)
    if (term_degree(m) != d0) return false;
  if (degree) *degree = d0;
  return true;
}

std::map<int, Poly> Poly::homogeneous_parts() const {
  std::map<int, Poly> parts;
  for (const auto& [m, c] : terms_) {
    auto it = parts.find(term_degree(m));
    if (it == parts.end()) it = parts.emplace(term_degree(m), Poly(alg_)).first;
    it->second.add_term(m, c);
  }
  return parts;
}

Poly zero(const Algebra& alg) { return Poly(alg); }

Poly constant(const Algebra& alg, const Rat& c) {
  Poly out(alg);
  out.add_term(Mono(alg.gens(), 0), c);
  return out;
}

Poly coordinate(const Algebra& alg, int a, int copy) {
  Poly out(alg);
  Mono m(alg.gens(), 0);
  m[alg.xgen(copy, a)] = 1;
  out.add_term(m, 1);
  return out;
}

Poly psi(const Algebra& alg, int a, int copy) {
  Poly out(alg);
  Mono m(alg.gens(), 0);
  m[alg.psigen(copy, a)] = 1;
  out.add_term(m, 1);
  return out;
}

namespace {

// Sign of concatenating canonical words a, b and re-sorting: each odd factor
// of b crosses the odd factors of a that sit strictly to its right.
int merge_sign(const Algebra& alg, const Mono& a, const Mono& b) {
  int crossings = 0;
  int odd_after = 0;  // odd factors of a with index > current g
  // Walk generators from the top; maintain suffix count of odd factors in a.
  for (int g = alg.gens() - 1; g >= 0; --g) {
    if (alg.parity(g) && b[g]) crossings += odd_after * b[g];
    if (alg.parity(g)) odd_after += a[g];
  }
  return crossings % 2 ? -1 : 1;
}

bool merge_mono(const Algebra& alg, const Mono& a, const Mono& b, Mono& out) {
  out.resize(alg.gens());
  for (int g = 0; g < alg.gens(); ++g) {
    int e = a[g] + b[g];
    if (alg.parity(g) && e > 1) return false;  // odd generator squared
    if (e > 255) throw std::overflow_error("monomial exponent overflow");
    out[g] = (uint8_t)e;
  }
  return true;
}

}  // namespace

Poly mul(const Poly& a, const Poly& b) {
  if (!(a.algebra() == b.algebra())) throw std::invalid_argument("algebra mismatch");
  const Algebra& alg = a.algebra();
  Poly out(alg);
  Mono merged;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (!merge_mono(alg, ma, mb, merged)) continue;
      Rat c = ca * cb;
      if (merge_sign(alg, ma, mb) < 0) c = -c;
      out.add_term(merged, c);
    }
  return out;
}

Poly derivative(const Poly& p, int gen) {
  const Algebra& alg = p.algebra();
  if (gen < 0 || gen >= alg.gens()) throw std::invalid_argument("bad generator");
  const bool odd_op = alg.parity(gen) == 1;
  Poly out(alg);
  for (const auto& [m, c] : p.terms()) {
    if (!m[gen]) continue;
    Mono dm = m;
    dm[gen] -= 1;
    Rat coeff = c * Rat((int)m[gen]);
    if (odd_op) {
      int crossed = 0;  // odd factors strictly before gen in the word
      for (int g = 0; g < gen; ++g)
        if (alg.parity(g)) crossed += m[g];
      if (crossed % 2) coeff = -coeff;
    }
    out.add_term(dm, coeff);
  }
  return out;
}

Poly derivative_x(const Poly& p, int a, int copy) {
  return derivative(p, p.algebra().xgen(copy, a));
}

Poly derivative_psi(const Poly& p, int a, int copy) {
  return derivative(p, p.algebra().psigen(copy, a));
}

Poly embed(const Poly& p, const Algebra& big, int copy) {
  if (!(p.algebra().grading == big.grading) || p.algebra().copies != 1)
    throw std::invalid_argument("embed expects a single-copy polynomial");
  if (copy < 0 || copy >= big.copies) throw std::invalid_argument("bad copy index");
  const int block = 2 * big.grading.d;
  Poly out(big);
  for (const auto& [m, c] : p.terms()) {
    Mono bm(big.gens(), 0);
    std::copy(m.begin(), m.end(), bm.begin() + copy * block);
    out.add_term(bm, c);
  }
  return out;
}

Poly identify_copies(const Poly& p) {
  const Algebra& alg = p.algebra();
  Algebra small{alg.grading, 1};
  Poly out(small);
  const int block = 2 * alg.grading.d;
  for (const auto& [m, c] : p.terms()) {
    // Word factors in source order as (target generator, parity); odd factors
    // crossing on the stable re-sort produce the Koszul sign.
    Mono tm(small.gens(), 0);
    bool dead = false;
    int crossings = 0;
    std::vector<int> odd_targets;  // target indices of odd factors, in order
    for (int g = 0; g < alg.gens() && !dead; ++g) {
      if (!m[g]) continue;
      int tgt = g % block;
      if (alg.parity(g)) {
        if (tm[tgt]) {
          dead = true;  // odd target generator squared
          break;
        }
        for (int prev : odd_targets)
          if (prev > tgt) ++crossings;
        odd_targets.push_back(tgt);
        tm[tgt] = 1;
      } else {
        int e = tm[tgt] + m[g];
        if (e > 255) throw std::overflow_error("monomial exponent overflow");
        tm[tgt] = (uint8_t)e;
      }
    }
    if (dead) continue;
    out.add_term(tm, crossings % 2 ? -c : c);
  }
  return out;
}

Poly delta(const Poly& p) {
  const Algebra& alg = p.algebra();
  if (alg.copies != 1) throw std::invalid_argument("delta expects a single copy");
  Poly out(alg);
  for (int a = 1; a <= alg.grading.d; ++a) {
    Poly term = derivative_x(derivative_psi(p, a), a);
    if (alg.grading.xdeg(a) % 2) term *= Rat(-1);
    out += term;
  }
  return out;
}

Poly schouten(const Poly& g1, const Poly& g2) {
  const Algebra& alg = g1.algebra();
  if (!(alg == g2.algebra())) throw std::invalid_argument("algebra mismatch");
  Poly out(alg);
  for (const auto& [deg, part] : g1.homogeneous_parts()) {
    Poly braided = mul(part, delta(g2));
    if (deg % 2) braided *= Rat(-1);
    out += delta(mul(part, g2)) - mul(delta(part), g2) - braided;
  }
  return out;
}

namespace {

// One edge operator of Phi: sum_a d^2/(dx_(target)^a dpsi_(source)a).
Poly edge_contraction(const Poly& p, int source_copy, int target_copy) {
  const Algebra& alg = p.algebra();
  Poly out(alg);
  for (int a = 1; a <= alg.grading.d; ++a)
    out += derivative_x(derivative_psi(p, a, source_copy), a, target_copy);
  return out;
}

Poly embedded_product(const Algebra& big, const std::vector<Poly>& args) {
  Poly prod = constant(big, 1);
  for (size_t v = 0; v < args.size(); ++v) prod = mul(prod, embed(args[v], big, (int)v));
  return prod;
}

}  // namespace

Poly phi(const graphs::DecoratedGraph& g, const std::vector<Poly>& args) {
  if (!g.directed) throw std::invalid_argument("phi expects a directed graph");
  if ((int)args.size() != g.n) throw std::invalid_argument("vertex/argument count mismatch");
  if (g.n == 0) throw std::invalid_argument("empty graph");
  Algebra big{args[0].algebra().grading, g.n};
  Poly acc = embedded_product(big, args);
  // Operator product over edges in orientation order: the first stored edge
  // is the leftmost operator, hence applied last.
  for (auto it = g.edges.rbegin(); it != g.edges.rend(); ++it)
    acc = edge_contraction(acc, it->first - 1, it->second - 1);
  Poly out = identify_copies(acc);
  if (g.parity < 0) out *= Rat(-1);
  return out;
}

Poly phi_sym(const graphs::DecoratedGraph& g, const std::vector<Poly>& args) {
  if (g.directed) throw std::invalid_argument("phi_sym expects an undirected graph");
  if ((int)args.size() != g.n) throw std::invalid_argument("vertex/argument count mismatch");
  for (auto [s, t] : g.edges)
    if (s == t) throw std::invalid_argument("loop edges are forbidden");
  Algebra big{args[0].algebra().grading, g.n};
  Poly prod = embedded_product(big, args);
  Algebra small{args[0].algebra().grading, 1};
  Poly out(small);
  std::vector<int> f(g.n);
  for (int v = 0; v < g.n; ++v) f[v] = v;
  do {
    Poly acc = prod;
    for (auto it = g.edges.rbegin(); it != g.edges.rend(); ++it) {
      int i = f[it->first - 1], j = f[it->second - 1];
      acc = edge_contraction(acc, i, j) + edge_contraction(acc, j, i);
    }
    out += identify_copies(acc);
  } while (std::next_permutation(f.begin(), f.end()));
  out *= Rat(1) / Rat(factorial(g.n));
  if (g.parity < 0) out *= Rat(-1);
  return out;
}

Poly composition_identity_check(const graphs::DecoratedGraph& g1,
                                const graphs::DecoratedGraph& g2,
                                const std::vector<int>& A,
                                const std::vector<Poly>& args) {
  std::vector<int> sortedA = A;
  std::sort(sortedA.begin(), sortedA.end());
  const int n = (int)args.size();
  const int m = (int)sortedA.size();
  if (g2.n != m) throw std::invalid_argument("subset size does not match inner graph");
  if (g1.n != n - m + 1) throw std::invalid_argument("outer graph size mismatch");
  const int infA = sortedA.front();

  // LHS: the composite argument sits at slot infA of the outer operator. The
  // inner operator has parity #E(G2), so plugging it past the leading
  // arguments costs the usual Koszul sign (left implicit in the printed
  // identity; required for it to hold).
  int lead_parity = 0;
  for (int v = 1; v < infA; ++v) {
    int deg = 0;
    if (!args[v - 1].is_homogeneous(&deg))
      throw std::invalid_argument(
          "composition_identity_check: leading arguments must be homogeneous");
    lead_parity += deg;
  }
  std::vector<Poly> inner_args;
  for (int v : sortedA) inner_args.push_back(args[v - 1]);
  Poly composite = phi(g2, inner_args);
  std::vector<Poly> outer_args;
  std::vector<int> outer_label;  // original vertex behind each outer slot
  for (int v = 1; v <= n; ++v) {
    if (std::binary_search(sortedA.begin(), sortedA.end(), v)) continue;
    outer_label.push_back(v);
  }
  outer_label.insert(outer_label.begin() + (infA - 1), 0);  // composite marker
  for (int lbl : outer_label)
    outer_args.push_back(lbl == 0 ? composite : args[lbl - 1]);
  Poly lhs = phi(g1, outer_args);
  if ((g2.edge_count() % 2) && (lead_parity % 2)) lhs *= Rat(-1);

  // RHS: glue g2 into slot infA of g1, distributing every g1-edge endpoint at
  // that slot over the vertices of A; edge order = g1 edges then g2 edges.
  Poly rhs(args[0].algebra());
  std::vector<int> slot_to_vertex(g1.n + 1, 0);
  for (int s = 1; s <= g1.n; ++s)
    slot_to_vertex[s] = (s == infA) ? 0 : outer_label[s - 1];
  std::vector<int> incident;  // indices into g1.edges with an endpoint at infA
  for (int e = 0; e < g1.edge_count(); ++e)
    if (g1.edges[e].first == infA || g1.edges[e].second == infA) incident.push_back(e);
  std::vector<int> choice(incident.size(), 0);
  while (true) {
    std::vector<std::pair<int, int>> edges;
    for (int e = 0; e < g1.edge_count(); ++e) {
      auto [s, t] = g1.edges[e];
      int cs = slot_to_vertex[s], ct = slot_to_vertex[t];
      auto pick = std::find(incident.begin(), incident.end(), e);
      if (pick != incident.end()) {
        int a = sortedA[choice[pick - incident.begin()]];
        if (s == infA) cs = a;
        if (t == infA) ct = a;
      }
      edges.emplace_back(cs, ct);
    }
    for (auto [s, t] : g2.edges) edges.emplace_back(sortedA[s - 1], sortedA[t - 1]);
    rhs += phi(graphs::make_graph(n, edges, true, g1.parity * g2.parity), args);
    size_t i = 0;
    while (i < choice.size() && choice[i] == m - 1) choice[i++] = 0;
    if (i == choice.size()) break;
    ++choice[i];
  }
  return lhs - rhs;
}

std::string to_string(const Poly& p) {
  const Algebra& alg = p.algebra();
  if (alg.copies != 1) throw std::invalid_argument("to_string expects a single copy");
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) out << " + ";
    first = false;
    out << gcalc::to_string(c);
    for (int a = 1; a <= alg.grading.d; ++a) {
      int e = m[alg.xgen(0, a)];
      if (!e) continue;
      out << "*x" << a;
      if (e > 1) out << "^" << e;
    }
    for (int a = 1; a <= alg.grading.d; ++a) {
      int e = m[alg.psigen(0, a)];
      if (!e) continue;
      out << "*psi" << a;
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

Poly parse_poly(const Algebra& alg, const std::string& text) {
  if (alg.copies != 1) throw std::invalid_argument("parse_poly expects a single copy");
  Poly out(alg);
  std::string s;
  for (char ch : text)
    if (!std::isspace((unsigned char)ch)) s += ch;
  if (s.empty() || s == "0") return out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find('+', pos + 1);
    if (next == std::string::npos) next = s.size();
    std::string term = s.substr(pos, next - pos);
    pos = next + 1;
    if (term.empty()) continue;
    Mono m(alg.gens(), 0);
    Rat coeff = 1;
    bool saw_coeff = false;
    std::istringstream ts(term);
    std::string factor;
    while (std::getline(ts, factor, '*')) {
      if (factor.empty()) continue;
      if (factor[0] == 'x' || factor.rfind("psi", 0) == 0) {
        bool is_psi_f = factor[0] == 'p';
        size_t body = is_psi_f ? 3 : 1;
        size_t caret = factor.find('^');
        int a = std::stoi(factor.substr(body, caret == std::string::npos
                                                  ? std::string::npos
                                                  : caret - body));
        int e = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
        if (a < 1 || a > alg.grading.d) throw std::invalid_argument("bad variable index");
        int gen = is_psi_f ? alg.psigen(0, a) : alg.xgen(0, a);
        if (alg.parity(gen) && m[gen] + e > 1)
          throw std::invalid_argument("odd variable squared");
        m[gen] = (uint8_t)(m[gen] + e);
      } else {
        coeff = parse_rat(factor);
        saw_coeff = true;
      }
    }
    if (!saw_coeff && term[0] == '-') coeff = -1;
    out.add_term(m, coeff);
  }
  return out;
}

Poly random_poly(const Algebra& alg, int nterms, int max_x, int max_psi,
                 std::mt19937_64& rng) {
  Poly out(alg);
  std::uniform_int_distribution<int> xdist(0, max_x), pdist(0, max_psi),
      cdist(-4, 4);
  for (int t = 0; t < nterms; ++t) {
    Mono m(alg.gens(), 0);
    for (int a = 1; a <= alg.grading.d; ++a) {
      int xe = xdist(rng);
      int pe = pdist(rng);
      if (alg.parity(alg.xgen(0, a))) xe = std::min(xe, 1);
      if (alg.parity(alg.psigen(0, a))) pe = std::min(pe, 1);
      m[alg.xgen(0, a)] = (uint8_t)xe;
      m[alg.psigen(0, a)] = (uint8_t)pe;
    }
    int c = cdist(rng);
    if (c) out.add_term(m, Rat(c));
  }
  return out;
}

Poly random_homogeneous(const Algebra& alg, int degree, int nterms, int max_x,
                        std::mt19937_64& rng) {
  for (int guard = 0; guard < 400; ++guard) {
    Poly cand = random_poly(alg, nterms * 4, max_x, 1, rng);
    Poly out(alg);
    int kept = 0;
    for (const auto& [m, c] : cand.terms()) {
      if (cand.term_degree(m) != degree) continue;
      out.add_term(m, c);
      if (++kept == nterms) break;
    }
    if (!out.is_zero()) return out;
  }
  throw std::runtime_error("cannot draw a homogeneous sample of that degree");
}

}  // namespace gcalc::poly
