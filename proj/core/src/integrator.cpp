#include "gcalc/integrator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gcalc/faceoperad.hpp"
#include "gcalc/numbers.hpp"

namespace gcalc::mc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Chart orientations, frozen so that the Gamma_1 weight of the outer
// Kontsevich form comes out at +1/12 on C_n and the half-plane weights
// satisfy c_out(Gamma_1) = +2 C(Gamma') (see the acceptance suite).
constexpr double kOrientationCn = 1.0;
constexpr double kOrientationCn0 = 1.0;

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 shard_rng(uint64_t seed, int shard) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64((uint64_t)shard + 1)));
}

// Unbounding maps from (0,1) with their Jacobians.
inline double unbound_line(double u, double& jac) {
  double t = std::tan(kPi * (u - 0.5));
  jac *= kPi * (1.0 + t * t);
  return t;
}

inline double unbound_halfline(double u, double& jac) {
  double t = std::tan(0.5 * kPi * u);
  jac *= 0.5 * kPi * (1.0 + t * t);
  return t;
}

// LU determinant with partial pivoting.
cplx det(std::vector<cplx>& a, int n) {
  cplx result{1.0, 0.0};
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::abs(a[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      double v = std::abs(a[r * n + col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return {0.0, 0.0};
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
      result = -result;
    }
    result *= a[col * n + col];
    cplx inv = 1.0 / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      cplx f = a[r * n + col] * inv;
      if (f == cplx{0.0, 0.0}) continue;
      for (int c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return result;
}

struct ShardResult {
  cplx sum{0.0, 0.0};
  long long rejected = 0;
};

// Runs `body` over shards on a small thread pool; reduction order is fixed by
// shard index so results do not depend on the thread count.
template <typename Body>
WeightEstimate run_sharded(const McOptions& opt, Body&& body) {
  int shards = std::max(16, opt.shards);
  long long base = opt.samples / shards;
  long long extra = opt.samples % shards;
  std::vector<ShardResult> results(shards);
  std::vector<long long> counts(shards);
  for (int s = 0; s < shards; ++s) counts[s] = base + (s < extra ? 1 : 0);

  unsigned hw = std::thread::hardware_concurrency();
  int nthreads = opt.threads > 0 ? opt.threads : (hw ? (int)hw : 2);
  nthreads = std::min<int>(nthreads, shards);
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      int s = next.fetch_add(1);
      if (s >= shards) break;
      auto rng = shard_rng(opt.seed, s);
      results[s] = body(rng, counts[s], s, shards);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  WeightEstimate est;
  est.samples = opt.samples;
  est.seed = opt.seed;
  est.shards = shards;
  cplx total{0.0, 0.0};
  for (int s = 0; s < shards; ++s) {
    total += results[s].sum;
    est.rejected += results[s].rejected;
  }
  est.value = total / (double)opt.samples;
  // Batched standard error from per-shard means (complex modulus spread).
  double var = 0.0;
  for (int s = 0; s < shards; ++s) {
    if (counts[s] == 0) continue;
    cplx mean_s = results[s].sum / (double)counts[s];
    var += std::norm(mean_s - est.value);
  }
  var /= (double)(shards - 1) * (double)shards;
  est.std_error = std::sqrt(var);
  return est;
}

}  // namespace

WeightEstimate mc_weight_Cn(const graphs::DecoratedGraph& g,
                            const prop::CircleForm& omega_circle, const McOptions& opt) {
  if (!g.directed) throw std::invalid_argument("mc_weight_Cn: directed graphs only");
  if (omega_circle.singular)
    throw std::invalid_argument("mc_weight_Cn: singular boundary restriction");
  const int n = g.n;
  const int l = g.edge_count();
  if (l != 2 * n - 3)
    throw std::invalid_argument("mc_weight_Cn: need #E = 2n-3 (degree mismatch)");
  const int dim = 2 * n - 3;
  const int pin = opt.pin_vertex;
  if (pin < 1 || pin > n) throw std::invalid_argument("bad pin vertex");
  const int pin2 = pin % n + 1;  // second gauge-fixed vertex

  auto body = [&](std::mt19937_64& rng, long long count, int shard,
                  int shards) -> ShardResult {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ShardResult out;
    std::vector<cplx> mat((size_t)dim * dim);
    std::vector<double> u(dim);
    prop::ConfigurationPoint p;
    p.z.resize(n);
    const double norm = std::pow(2.0 * kPi, -(double)l);
    // Integrand over the unit cube; nullopt on a seam.
    auto evaluate = [&](const std::vector<double>& uu) -> std::optional<cplx> {
      double jac = 1.0;
      double theta = 2.0 * kPi * uu[0];
      jac *= 2.0 * kPi;
      p.z[pin - 1] = {0.0, 0.0};
      p.z[pin2 - 1] = {std::cos(theta), std::sin(theta)};
      int slot = 1;
      for (int v = 1; v <= n; ++v) {
        if (v == pin || v == pin2) continue;
        double x = unbound_line(uu[slot++], jac);
        double y = unbound_line(uu[slot++], jac);
        p.z[v - 1] = {x, y};
      }
      // Rows: one pulled-back circle form per edge; columns: theta then the
      // free coordinates in vertex order.
      for (int e = 0; e < l; ++e) {
        auto row = prop::pullback_circle(omega_circle, p, g.edges[e].first,
                                         g.edges[e].second);
        if (!row) return std::nullopt;
        int col = 0;
        // d theta column: z_pin2 = (cos, sin) theta.
        mat[(size_t)e * dim + col++] =
            (*row)[2 * (pin2 - 1)] * (-std::sin(theta)) +
            (*row)[2 * (pin2 - 1) + 1] * std::cos(theta);
        for (int v = 1; v <= n; ++v) {
          if (v == pin || v == pin2) continue;
          mat[(size_t)e * dim + col++] = (*row)[2 * (v - 1)];
          mat[(size_t)e * dim + col++] = (*row)[2 * (v - 1) + 1];
        }
      }
      return kOrientationCn * det(mat, dim) * jac * norm;
    };
    for (long long k = 0; k < count; ++k) {
      for (int c = 0; c < dim; ++c) u[c] = uni(rng);
      if (opt.stratify_theta) u[0] = ((double)shard + u[0]) / (double)shards;
      auto value = evaluate(u);
      if (value && opt.antithetic) {
        std::vector<double> mirrored(dim);
        for (int c = 0; c < dim; ++c) mirrored[c] = 1.0 - u[c];
        auto twin = evaluate(mirrored);
        if (!twin) {
          value.reset();
        } else {
          value = 0.5 * (*value + *twin);
        }
      }
      if (!value) {
        ++out.rejected;
        --k;
        continue;
      }
      out.sum += *value;
    }
    return out;
  };
  auto est = run_sharded(opt, body);
  if (g.parity < 0) est.value = -est.value;
  return est;
}

WeightEstimate mc_weight_Cn0(const graphs::DecoratedGraph& g, const prop::Propagator& w,
                             prop::MapMode mode, const McOptions& opt) {
  if (!g.directed) throw std::invalid_argument("mc_weight_Cn0: directed graphs only");
  if (w.is_singular() && !opt.experimental_singular)
    throw std::invalid_argument(
        "mc_weight_Cn0: singular propagator needs the experimental flag");
  const int n = g.n;
  const int l = g.edge_count();
  if (l != 2 * n - 2)
    throw std::invalid_argument("mc_weight_Cn0: need #E = 2n-2 (degree mismatch)");
  const int dim = 2 * n - 2;
  const int pin = opt.pin_vertex;
  if (pin < 1 || pin > n) throw std::invalid_argument("bad pin vertex");

  auto body = [&](std::mt19937_64& rng, long long count, int, int) -> ShardResult {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ShardResult out;
    std::vector<cplx> mat((size_t)dim * dim);
    std::vector<double> u(dim);
    prop::ConfigurationPoint p;
    p.z.resize(n);
    const double norm = std::pow(2.0 * kPi, -(double)l);
    auto evaluate = [&](const std::vector<double>& uu) -> std::optional<cplx> {
      double jac = 1.0;
      p.z[pin - 1] = {0.0, 1.0};
      int slot = 0;
      for (int v = 1; v <= n; ++v) {
        if (v == pin) continue;
        double x = unbound_line(uu[slot++], jac);
        double y = unbound_halfline(uu[slot++], jac);
        p.z[v - 1] = {x, y};
      }
      if (!p.off_seams()) return std::nullopt;
      for (int e = 0; e < l; ++e) {
        auto row =
            prop::pullback_halfplane(w, mode, p, g.edges[e].first, g.edges[e].second);
        if (!row) return std::nullopt;
        int col = 0;
        for (int v = 1; v <= n; ++v) {
          if (v == pin) continue;
          mat[(size_t)e * dim + col++] = (*row)[2 * (v - 1)];
          mat[(size_t)e * dim + col++] = (*row)[2 * (v - 1) + 1];
        }
      }
      return kOrientationCn0 * det(mat, dim) * jac * norm;
    };
    for (long long k = 0; k < count; ++k) {
      for (int c = 0; c < dim; ++c) u[c] = uni(rng);
      auto value = evaluate(u);
      if (value && opt.antithetic) {
        std::vector<double> mirrored(dim);
        for (int c = 0; c < dim; ++c) mirrored[c] = 1.0 - u[c];
        auto twin = evaluate(mirrored);
        if (!twin) {
          value.reset();
        } else {
          value = 0.5 * (*value + *twin);
        }
      }
      if (!value) {
        ++out.rejected;
        --k;
        continue;
      }
      out.sum += *value;
    }
    return out;
  };
  auto est = run_sharded(opt, body);
  if (g.parity < 0) est.value = -est.value;
  return est;
}

namespace {

struct Appendix4Entry {
  graphs::DecoratedGraph graph;  // printed labeling and edge order
  bool vanishing;
};

const std::vector<Appendix4Entry>& appendix4_entries() {
  using graphs::parse_graph;
  static const std::vector<Appendix4Entry> table = {
      // The three weight-1/12 shapes, printed orderings.
      {parse_graph("4;5;3>1,3>2,4>1,4>2,2>1"), false},
      {parse_graph("4;5;4>2,4>3,3>1,2>1,3>2"), false},
      {parse_graph("4;5;4>1,3>1,4>2,3>2,4>3"), false},
      // The three vanishing shapes.
      {parse_graph("4;5;4>2,4>3,4>1,2>1,3>1"), true},
      {parse_graph("4;5;4>2,4>3,4>1,2>1,3>2"), true},
      {parse_graph("4;5;3>1,4>3,4>1,2>1,3>2"), true},
  };
  return table;
}

// The printed one-dimensional reduction: (1/pi^5) int_pi^{2pi} (3pi^2/2 -
// pi x)^2 dx. Substituting x = pi(1+s) leaves int_0^1 (1/2 - s)^2 ds, a
// rational polynomial integral.
Rat a44_value() {
  // integral of (1/2 - s)^2 = 1/4 - s + s^2 over [0,1], term by term.
  return Rat(1, 4) - Rat(1, 2) + Rat(1, 3);
}

// Sign of the permutation matching `a` to `b` as ordered edge lists over the
// same multiset (no repeated edges expected).
std::optional<int> ordering_sign(const std::vector<std::pair<int, int>>& a,
                                 const std::vector<std::pair<int, int>>& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<int> pos;
  std::vector<bool> used(b.size(), false);
  for (const auto& e : a) {
    bool found = false;
    for (size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && b[j] == e) {
        pos.push_back((int)j);
        used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return permutation_sign(pos);
}

}  // namespace

std::optional<Rat> analytic_weight_appendix4(const graphs::DecoratedGraph& g) {
  if (!g.directed || g.n != 4 || g.edge_count() != 5) return std::nullopt;
  std::vector<int> perm(g.n);
  for (int i = 0; i < g.n; ++i) perm[i] = i + 1;
  do {
    std::vector<std::pair<int, int>> relabeled;
    for (auto [s, t] : g.edges) relabeled.emplace_back(perm[s - 1], perm[t - 1]);
    for (const auto& entry : appendix4_entries()) {
      auto sign = ordering_sign(relabeled, entry.graph.edges);
      if (!sign) continue;
      if (entry.vanishing) return Rat(0);
      return Rat(*sign * g.parity) * a44_value();
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

cplx wheel_weight_closed_form(int n, WheelVariant variant) {
  if (n < 2) throw std::invalid_argument("wheel_weight_closed_form: n < 2");
  int sgn = (n * (n - 1) / 2) % 2 ? -1 : 1;
  if (variant == WheelVariant::BernoulliEven) {
    if (n % 2) throw std::invalid_argument("bernoulli_even needs even n");
    return {to_double(wheel_weight_bernoulli_exact(n)), 0.0};
  }
  // (-1)^{n(n-1)/2} zeta(n) / (2 pi i)^n
  cplx denom = std::pow(cplx{0.0, 2.0 * kPi}, (double)n);
  return (double)sgn * zeta_series(n) / denom;
}

Rat wheel_weight_bernoulli_exact(int n) {
  if (n < 2 || n % 2) throw std::invalid_argument("bernoulli wheel weight needs even n");
  int sgn = (n * (n - 1) / 2) % 2 ? -1 : 1;
  return Rat(-sgn) * bernoulli(n) / (Rat(2) * Rat(factorial(n)));
}

WeightEstimate zeta_box_integral(int n, const McOptions& opt) {
  if (n < 2) throw std::invalid_argument("zeta_box_integral: diverges for n < 2");
  auto body = [&](std::mt19937_64& rng, long long count, int, int) -> ShardResult {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ShardResult out;
    for (long long k = 0; k < count; ++k) {
      double prod = 1.0;
      for (int i = 0; i < n; ++i) prod *= uni(rng);
      out.sum += 1.0 / (1.0 - prod);
    }
    return out;
  };
  return run_sharded(opt, body);
}

double zeta_box_series(int n) { return zeta_series(n); }

void ExactTable::set(const graphs::DecoratedGraph& g, const Rat& value) {
  int sign = 1;
  auto canon = graphs::canonical_ordered(g, &sign);
  Rat stored = value * Rat(sign * g.parity);
  auto [it, inserted] = entries_.emplace(graphs::format_graph(canon), stored);
  if (!inserted && it->second != stored)
    throw std::invalid_argument("conflicting weight for " + it->first);
}

bool ExactTable::has_arity(int n) const {
  std::string prefix = std::to_string(n) + ";";
  for (const auto& [key, value] : entries_)
    if (key.rfind(prefix, 0) == 0 && value != 0) return true;
  return false;
}

Rat ExactTable::lookup(const graphs::DecoratedGraph& g) const {
  int sign = 1;
  auto canon = graphs::canonical_ordered(g, &sign);
  auto it = entries_.find(graphs::format_graph(canon));
  if (it == entries_.end()) {
    if (total) return Rat(0);
    throw std::out_of_range("weight table has no entry for " + graphs::format_graph(g));
  }
  return it->second * Rat(sign * g.parity);
}

Rat stokes_residual_closed(const graphs::DecoratedGraph& g, const ExactTable& c) {
  const int n = g.n;
  if (g.edge_count() != 2 * n - 4)
    throw std::invalid_argument("stokes_residual_closed: need #E = 2n-4");
  Rat residual = 0;
  for (const auto& A : operad::proper_subsets_ge2(n)) {
    if (!graphs::is_admissible(g, A, graphs::AdmissibleContext::Collapse2nMinus4))
      continue;
    int sign = graphs::koszul_sign(g, A);
    residual += Rat(sign) * c.lookup(graphs::complete_subgraph(g, A)) *
                c.lookup(graphs::quotient_graph(g, A));
  }
  return residual;
}

Rat stokes_residual_morphism(const graphs::DecoratedGraph& g, const ExactTable& c_in,
                             const ExactTable& c_out, const ExactTable& C) {
  const int n = g.n;
  if (g.edge_count() != 2 * n - 3)
    throw std::invalid_argument("stokes_residual_morphism: need #E = 2n-3");
  auto C_or_point = [&](const graphs::DecoratedGraph& h) -> Rat {
    if (h.n == 1) return Rat(1);  // the point graph integrates to 1
    return C.lookup(h);
  };
  Rat residual = 0;
  // Collapse terms, A = [n] included.
  std::vector<std::vector<int>> subsets = operad::proper_subsets_ge2(n);
  if (n >= 2) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i + 1;
    subsets.push_back(all);
  }
  for (const auto& A : subsets) {
    auto sub = graphs::complete_subgraph(g, A);
    if (sub.edge_count() != 2 * (int)A.size() - 3) continue;
    int sign = graphs::koszul_sign(g, A);
    residual -= Rat(sign) * c_in.lookup(sub) * C_or_point(graphs::quotient_graph(g, A));
  }
  // Partition terms.
  for (const auto& blocks : operad::partitions_ge2(n)) {
    bool ok = true;
    std::vector<graphs::DecoratedGraph> subs;
    for (const auto& B : blocks) {
      subs.push_back(graphs::complete_subgraph(g, B));
      if (subs.back().edge_count() != 2 * (int)B.size() - 2) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    int sign = graphs::koszul_sign(g, blocks);
    Rat term = Rat(sign) * c_out.lookup(graphs::quotient_graph(g, blocks));
    for (const auto& sub : subs) term *= C_or_point(sub);
    residual += term;
  }
  return residual;
}

}  // namespace gcalc::mc
