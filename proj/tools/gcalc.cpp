// gcalc: graph-complex calculus front end. Enumerates decorated graph
// families, checks the operadic differentials, evaluates symbolic graph
// operators, and estimates configuration-space weights by Monte Carlo.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gcalc/faceoperad.hpp"
#include "gcalc/graphs.hpp"
#include "gcalc/integrator.hpp"
#include "gcalc/numbers.hpp"
#include "gcalc/polyfields.hpp"
#include "gcalc/propagators.hpp"
#include "gcalc/theory.hpp"

using json = nlohmann::ordered_json;
using namespace gcalc;

namespace {

long long parse_samples(const std::string& s) {
  double v = std::stod(s);
  if (v < 1 || v > 4e12) throw CLI::ValidationError("samples out of range: " + s);
  return (long long)std::llround(v);
}

struct OutputOptions {
  std::string format = "json";
};

void emit(const json& doc, const OutputOptions& out) {
  if (out.format == "json") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  // Flat projections; nested arrays become one row per element.
  std::vector<json> rows;
  if (doc.contains("rows") && doc["rows"].is_array())
    for (const auto& r : doc["rows"]) rows.push_back(r);
  else
    rows.push_back(doc);
  if (out.format == "csv") {
    bool header = true;
    for (const auto& r : rows) {
      if (header) {
        bool first = true;
        for (auto& [k, v] : r.items()) {
          std::cout << (first ? "" : ",") << k;
          first = false;
        }
        std::cout << "\n";
        header = false;
      }
      bool first = true;
      for (auto& [k, v] : r.items()) {
        std::cout << (first ? "" : ",")
                  << (v.is_string() ? v.get<std::string>() : v.dump());
        first = false;
      }
      std::cout << "\n";
    }
    return;
  }
  for (const auto& r : rows) {
    for (auto& [k, v] : r.items())
      std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump())
                << "\n";
    std::cout << "\n";
  }
}

json estimate_record(const std::string& graph, const std::string& propagator,
                     const std::string& map_mode, const mc::WeightEstimate& est) {
  json rec;
  rec["graph"] = graph;
  rec["propagator"] = propagator;
  rec["map"] = map_mode;
  rec["method"] = est.method();
  rec["samples"] = est.samples;
  rec["shards"] = est.shards;
  rec["seed"] = est.seed;
  rec["value_re"] = est.value.real();
  rec["value_im"] = est.value.imag();
  rec["std_error"] = est.std_error;
  rec["rejected_samples"] = est.rejected;
  return rec;
}

poly::Grading make_grading(int d, const std::vector<int>& degrees) {
  if (degrees.empty()) return poly::Grading(d);
  return poly::Grading(d, degrees);
}

std::vector<poly::Poly> parse_args_list(const poly::Algebra& alg, const std::string& s) {
  std::vector<poly::Poly> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ';'))
    if (!tok.empty()) out.push_back(poly::parse_poly(alg, tok));
  return out;
}

// "kontsevich-outer" -> (propagator, circle side); bare circle-form names are
// accepted for the plane space.
std::pair<prop::Propagator, prop::Side> parse_circle_spec(const std::string& name) {
  auto dash = name.rfind('-');
  if (dash != std::string::npos) {
    std::string side = name.substr(dash + 1);
    if (side == "outer" || side == "inner")
      return {prop::parse_propagator(name.substr(0, dash)),
              side == "outer" ? prop::Side::Outer : prop::Side::Inner};
  }
  return {prop::parse_propagator(name), prop::Side::Outer};
}

mc::ExactTable table_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot open table file: " + path);
  json doc = json::parse(in);
  mc::ExactTable table;
  for (const auto& entry : doc.at("entries"))
    table.set(graphs::parse_graph(entry.at("graph").get<std::string>()),
              parse_rat(entry.at("weight").get<std::string>()));
  return table;
}

mc::ExactTable named_table(const std::string& spec) {
  if (spec == "omega0") return theory::omega0_c_table();
  if (spec == "kontsevich-outer") return theory::kontsevich_outer_c_table();
  if (spec == "zero") return mc::ExactTable{};
  if (spec.rfind("file:", 0) == 0) return table_from_file(spec.substr(5));
  throw CLI::ValidationError("unknown table: " + spec);
}

json series_to_json(const theory::HSeries& series) {
  json arr = json::array();
  for (size_t k = 0; k < series.size(); ++k) {
    json term;
    term["hbar_power"] = k;
    term["value"] = poly::to_string(series[k]);
    arr.push_back(term);
  }
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-complex calculus: graph families, operadic differentials, "
               "polyvector operators, and configuration-space weights"};
  app.require_subcommand(1);
  app.set_config("--config");

  OutputOptions out;
  app.add_option("--format", out.format, "json, csv, or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  std::string samples_text = "1e6";
  uint64_t seed = 1;
  int shards = 32;
  int threads = 0;
  double tolerance = 1e-6;
  app.add_option("--samples", samples_text, "Monte Carlo samples (scientific ok)");
  app.add_option("--seed", seed, "random seed")->envname("GCALC_SEED");
  app.add_option("--shards", shards, "deterministic shard count (>= 16)");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--tolerance", tolerance, "verification tolerance")
      ->check(CLI::PositiveNumber);

  int dim = 2;
  std::vector<int> degrees;
  int hbar_order = 2;
  app.add_option("--d", dim, "coordinate dimension");
  app.add_option("--degrees", degrees, "coordinate degrees (default all even)");
  app.add_option("--hbar-order", hbar_order, "hbar truncation order");

  // graphs
  auto* cmd_graphs = app.add_subcommand("graphs", "enumerate a graph family");
  int gn = 2, gl = 1;
  bool undirected = false, unlabeled = false;
  cmd_graphs->add_option("--n", gn, "vertex count")->required();
  cmd_graphs->add_option("--l", gl, "edge count")->required();
  cmd_graphs->add_flag("--undirected", undirected);
  cmd_graphs->add_flag("--unlabeled", unlabeled);

  // operad-ddcheck
  auto* cmd_dd = app.add_subcommand("operad-ddcheck", "d^2 = 0 on all generators");
  int max_arity = 5;
  cmd_dd->add_option("--max-arity", max_arity);

  // weight
  auto* cmd_weight = app.add_subcommand("weight", "one graph weight");
  std::string graph_text, prop_name = "volume_s1", space = "Cn", map_mode = "renormalized";
  bool analytic = false, experimental = false;
  int pin = 1;
  cmd_weight->add_option("--graph", graph_text)->required();
  cmd_weight->add_option("--propagator", prop_name);
  cmd_weight->add_option("--space", space)->check(CLI::IsMember({"Cn", "Cn0"}));
  cmd_weight->add_option("--map", map_mode)
      ->check(CLI::IsMember({"renormalized", "plain"}));
  cmd_weight->add_option("--pin", pin, "gauge-pinned vertex");
  cmd_weight->add_flag("--analytic", analytic, "closed form (4-vertex table)");
  cmd_weight->add_flag("--experimental-singular", experimental);

  // weight-table
  auto* cmd_table = app.add_subcommand("weight-table", "weights of a whole family");
  int tn = 3, tl = 3;
  std::string tprop = "volume_s1", tspace = "Cn", tmap = "renormalized";
  cmd_table->add_option("--n", tn)->required();
  cmd_table->add_option("--l", tl)->required();
  cmd_table->add_option("--propagator", tprop);
  cmd_table->add_option("--space", tspace)->check(CLI::IsMember({"Cn", "Cn0"}));
  cmd_table->add_option("--map", tmap)->check(CLI::IsMember({"renormalized", "plain"}));

  // schouten
  auto* cmd_sch = app.add_subcommand("schouten", "Schouten bracket of two fields");
  std::string g1_text, g2_text;
  cmd_sch->add_option("--g1", g1_text)->required();
  cmd_sch->add_option("--g2", g2_text)->required();

  // phi
  auto* cmd_phi = app.add_subcommand("phi", "graph operator on polyvector fields");
  std::string phi_graph, phi_args;
  bool phi_symmetrized = false;
  cmd_phi->add_option("--graph", phi_graph)->required();
  cmd_phi->add_option("--args", phi_args, "semicolon-separated fields")->required();
  cmd_phi->add_flag("--symmetrized", phi_symmetrized, "use the two-sided operator");

  // mu
  auto* cmd_mu = app.add_subcommand("mu", "homotopy operation from a weight table");
  std::string mu_table = "omega0", mu_args;
  cmd_mu->add_option("--table", mu_table, "omega0, kontsevich-outer, file:PATH");
  cmd_mu->add_option("--args", mu_args)->required();

  // morphism
  auto* cmd_mor = app.add_subcommand("morphism", "morphism component from a C-table");
  std::string mor_table = "zero", mor_args;
  cmd_mor->add_option("--table", mor_table, "zero, file:PATH");
  cmd_mor->add_option("--args", mor_args)->required();

  // transform
  auto* cmd_tr = app.add_subcommand("transform", "action on a Maurer-Cartan element");
  std::string tr_table = "zero", tr_alpha;
  cmd_tr->add_option("--table", tr_table);
  cmd_tr->add_option("--alpha", tr_alpha)->required();

  // duflo
  auto* cmd_duflo = app.add_subcommand("duflo", "Duflo transform of a Poisson pair");
  std::string duflo_g2, duflo_g0, duflo_variant = "bernoulli", duflo_route = "trace";
  cmd_duflo->add_option("--gamma2", duflo_g2)->required();
  cmd_duflo->add_option("--gamma0", duflo_g0)->required();
  cmd_duflo->add_option("--variant", duflo_variant)
      ->check(CLI::IsMember({"bernoulli", "zeta"}));
  cmd_duflo->add_option("--route", duflo_route)->check(CLI::IsMember({"trace", "wheel"}));

  // flow
  auto* cmd_flow = app.add_subcommand("flow", "tetrahedron flow of a bivector");
  std::string flow_alpha;
  bool second_term = false;
  cmd_flow->add_option("--alpha", flow_alpha)->required();
  cmd_flow->add_flag("--second-term", second_term, "include the 4/3 summand");

  // zeta
  auto* cmd_zeta = app.add_subcommand("zeta", "box-integral zeta estimate");
  int zeta_n = 2;
  cmd_zeta->add_option("--n", zeta_n)->required();

  // verify-*
  auto* cmd_vstokes = app.add_subcommand("verify-stokes", "exact Stokes identities");
  auto* cmd_va4 = app.add_subcommand("verify-appendix4", "4-vertex weights");
  bool va4_mc = false;
  cmd_va4->add_flag("--mc", va4_mc, "also run the Monte Carlo route");
  auto* cmd_vwheels = app.add_subcommand("verify-wheels", "wheel closed forms");

  CLI11_PARSE(app, argc, argv);

  try {
    mc::McOptions mco;
    mco.samples = parse_samples(samples_text);
    mco.seed = seed;
    mco.shards = shards;
    mco.threads = threads;
    poly::Algebra alg{make_grading(dim, degrees), 1};

    if (*cmd_graphs) {
      auto classes = unlabeled ? graphs::enumerate_graphs_unlabeled(gn, gl, !undirected)
                               : graphs::enumerate_graphs(gn, gl, !undirected);
      json doc;
      doc["command"] = "graphs";
      doc["n"] = gn;
      doc["l"] = gl;
      doc["directed"] = !undirected;
      doc["unlabeled"] = unlabeled;
      doc["count"] = classes.size();
      json rows = json::array();
      for (const auto& cls : classes) {
        json row;
        row["graph"] = graphs::format_graph(cls.representative);
        row["aut"] = graphs::automorphism_count(cls.representative);
        rows.push_back(row);
      }
      doc["rows"] = rows;
      emit(doc, out);
      return 0;
    }

    if (*cmd_dd) {
      auto report = operad::check_d_squared(max_arity);
      auto quotient = operad::leibniz_quotient_check();
      json doc;
      doc["command"] = "operad-ddcheck";
      doc["max_arity"] = max_arity;
      doc["d_squared"] = report.ok ? "pass" : report.witness;
      doc["leibniz_quotient"] = quotient.ok ? "pass" : quotient.detail;
      emit(doc, out);
      return report.ok && quotient.ok ? 0 : 1;
    }

    if (*cmd_weight) {
      auto g = graphs::parse_graph(graph_text);
      json doc;
      doc["command"] = "weight";
      if (analytic) {
        auto w = mc::analytic_weight_appendix4(g);
        if (!w) throw std::invalid_argument("graph outside the analytic 4-vertex table");
        mc::WeightEstimate est;
        est.value = {to_double(*w), 0.0};
        est.analytic = true;
        est.seed = seed;
        doc["rows"] = json::array({estimate_record(graph_text, "kontsevich-outer",
                                                   "plane", est)});
        doc["rows"][0]["value_exact"] = to_string(*w);
        emit(doc, out);
        return 0;
      }
      mco.pin_vertex = pin;
      mco.experimental_singular = experimental;
      mc::WeightEstimate est;
      if (space == "Cn") {
        auto [w, side] = parse_circle_spec(prop_name);
        est = mc::mc_weight_Cn(g, prop::boundary_restriction(w, side), mco);
      } else {
        auto w = prop::parse_propagator(prop_name);
        est = mc::mc_weight_Cn0(g, w,
                                map_mode == "plain" ? prop::MapMode::Plain
                                                    : prop::MapMode::Renormalized,
                                mco);
      }
      doc["rows"] = json::array(
          {estimate_record(graph_text, prop_name, space == "Cn" ? "plane" : map_mode,
                           est)});
      emit(doc, out);
      return 0;
    }

    if (*cmd_table) {
      json doc;
      doc["command"] = "weight-table";
      json rows = json::array();
      for (const auto& cls : graphs::enumerate_graphs(tn, tl, true)) {
        mc::WeightEstimate est;
        if (tspace == "Cn") {
          auto [w, side] = parse_circle_spec(tprop);
          est = mc::mc_weight_Cn(cls.representative, prop::boundary_restriction(w, side),
                                 mco);
        } else {
          est = mc::mc_weight_Cn0(cls.representative, prop::parse_propagator(tprop),
                                  tmap == "plain" ? prop::MapMode::Plain
                                                  : prop::MapMode::Renormalized,
                                  mco);
        }
        rows.push_back(estimate_record(graphs::format_graph(cls.representative), tprop,
                                       tspace == "Cn" ? "plane" : tmap, est));
      }
      doc["rows"] = rows;
      emit(doc, out);
      return 0;
    }

    if (*cmd_sch) {
      auto g1 = poly::parse_poly(alg, g1_text);
      auto g2 = poly::parse_poly(alg, g2_text);
      json doc;
      doc["command"] = "schouten";
      doc["result"] = poly::to_string(poly::schouten(g1, g2));
      emit(doc, out);
      return 0;
    }

    if (*cmd_phi) {
      auto g = graphs::parse_graph(phi_graph);
      auto args = parse_args_list(alg, phi_args);
      json doc;
      doc["command"] = "phi";
      doc["graph"] = phi_graph;
      doc["result"] = poly::to_string(phi_symmetrized ? poly::phi_sym(g, args)
                                                      : poly::phi(g, args));
      emit(doc, out);
      return 0;
    }

    if (*cmd_mu) {
      auto args = parse_args_list(alg, mu_args);
      auto structure = theory::build_mu(named_table(mu_table), (int)args.size());
      json doc;
      doc["command"] = "mu";
      doc["table"] = mu_table;
      doc["arity"] = args.size();
      doc["symmetric"] = structure.symmetric;
      doc["result"] = poly::to_string(structure.mu(args));
      emit(doc, out);
      return 0;
    }

    if (*cmd_mor) {
      auto args = parse_args_list(alg, mor_args);
      auto F = theory::build_morphism(named_table(mor_table), (int)args.size());
      json doc;
      doc["command"] = "morphism";
      doc["table"] = mor_table;
      doc["arity"] = args.size();
      doc["result"] = poly::to_string(F.apply(args));
      emit(doc, out);
      return 0;
    }

    if (*cmd_tr) {
      auto alpha = poly::parse_poly(alg, tr_alpha);
      auto F = theory::build_morphism(named_table(tr_table), hbar_order + 1);
      auto series = theory::transform_mc(F, theory::hseries(alpha, hbar_order),
                                         hbar_order);
      json doc;
      doc["command"] = "transform";
      doc["table"] = tr_table;
      doc["hbar_order"] = hbar_order;
      doc["series"] = series_to_json(series);
      emit(doc, out);
      return 0;
    }

    if (*cmd_duflo) {
      auto g2 = poly::parse_poly(alg, duflo_g2);
      auto g0 = poly::parse_poly(alg, duflo_g0);
      auto variant = duflo_variant == "bernoulli" ? theory::DufloVariant::Bernoulli
                                                  : theory::DufloVariant::Zeta;
      auto series = duflo_route == "trace"
                        ? theory::duflo_transform(g2, g0, variant, hbar_order)
                        : theory::duflo_wheel_route(g2, g0, variant, hbar_order);
      json doc;
      doc["command"] = "duflo";
      doc["variant"] = duflo_variant;
      doc["route"] = duflo_route;
      doc["hbar_order"] = hbar_order;
      doc["series"] = series_to_json(series);
      emit(doc, out);
      return 0;
    }

    if (*cmd_flow) {
      auto alpha = poly::parse_poly(alg, flow_alpha);
      json doc;
      doc["command"] = "flow";
      doc["second_term"] = second_term;
      doc["result"] = poly::to_string(theory::tetrahedron_flow(alpha, second_term));
      emit(doc, out);
      return 0;
    }

    if (*cmd_zeta) {
      auto est = mc::zeta_box_integral(zeta_n, mco);
      double oracle = mc::zeta_box_series(zeta_n);
      json doc;
      doc["command"] = "zeta";
      doc["n"] = zeta_n;
      json rec = estimate_record("box", "none", "none", est);
      rec["series_oracle"] = oracle;
      doc["rows"] = json::array({rec});
      emit(doc, out);
      double err = std::abs(est.value.real() - oracle);
      return err <= std::max(tolerance * oracle, 3.0 * est.std_error) ? 0 : 1;
    }

    if (*cmd_vstokes) {
      auto table = theory::omega0_c_table();
      bool ok = true;
      long long checked = 0;
      for (int n = 3; n <= 4; ++n)
        for (const auto& cls : graphs::enumerate_graphs(n, 2 * n - 4, true)) {
          if (mc::stokes_residual_closed(cls.representative, table) != 0) ok = false;
          ++checked;
        }
      mc::ExactTable C;
      for (const auto& cls : graphs::enumerate_graphs(3, 3, true)) {
        if (mc::stokes_residual_morphism(cls.representative, table, table, C) != 0)
          ok = false;
        ++checked;
      }
      json doc;
      doc["command"] = "verify-stokes";
      doc["graphs_checked"] = checked;
      doc["result"] = ok ? "pass" : "fail";
      emit(doc, out);
      return ok ? 0 : 1;
    }

    if (*cmd_va4) {
      json rows = json::array();
      bool ok = true;
      for (const auto& cls : graphs::enumerate_graphs(4, 5, true)) {
        auto w = mc::analytic_weight_appendix4(cls.representative);
        if (!w) continue;
        if (*w == 0 || abs(*w) == Rat(1, 12)) {
          // analytic table consistent
        } else {
          ok = false;
        }
      }
      // The six printed shapes with their printed orderings.
      const std::vector<std::pair<std::string, std::string>> shapes = {
          {"4;5;3>1,3>2,4>1,4>2,2>1", "1/12"}, {"4;5;4>2,4>3,3>1,2>1,3>2", "1/12"},
          {"4;5;4>1,3>1,4>2,3>2,4>3", "1/12"}, {"4;5;4>2,4>3,4>1,2>1,3>1", "0"},
          {"4;5;4>2,4>3,4>1,2>1,3>2", "0"},    {"4;5;3>1,4>3,4>1,2>1,3>2", "0"}};
      auto K = prop::parse_propagator("kontsevich");
      auto Kout = prop::boundary_restriction(K, prop::Side::Outer);
      for (const auto& [text, expect] : shapes) {
        auto g = graphs::parse_graph(text);
        auto w = mc::analytic_weight_appendix4(g);
        json row;
        row["graph"] = text;
        row["analytic"] = w ? to_string(*w) : "none";
        row["expected"] = expect;
        if (!w || to_string(*w) != expect) ok = false;
        if (va4_mc) {
          auto est = mc::mc_weight_Cn(g, Kout, mco);
          row["mc_value"] = est.value.real();
          row["mc_std_error"] = est.std_error;
          double target = to_double(*w);
          double tol = std::max(0.02 * std::abs(target), 3.0 * est.std_error);
          if (std::abs(est.value.real() - target) > tol) ok = false;
        }
        rows.push_back(row);
      }
      json doc;
      doc["command"] = "verify-appendix4";
      doc["rows"] = rows;
      doc["result"] = ok ? "pass" : "fail";
      emit(doc, out);
      return ok ? 0 : 1;
    }

    if (*cmd_vwheels) {
      bool ok = true;
      json rows = json::array();
      for (int n : {2, 4, 6}) {
        auto z = mc::wheel_weight_closed_form(n, mc::WheelVariant::HalfK);
        auto b = mc::wheel_weight_closed_form(n, mc::WheelVariant::BernoulliEven);
        json row;
        row["n"] = n;
        row["zeta_route_re"] = z.real();
        row["zeta_route_im"] = z.imag();
        row["bernoulli_route"] = to_string(mc::wheel_weight_bernoulli_exact(n));
        if (std::abs(z - b) > 1e-12) ok = false;
        rows.push_back(row);
      }
      json doc;
      doc["command"] = "verify-wheels";
      doc["rows"] = rows;
      doc["result"] = ok ? "pass" : "fail";
      emit(doc, out);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
