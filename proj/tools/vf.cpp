// vf: evaluate and verify Virasoro character expressions from the command line.

#include <CLI11.hpp>
#include <cctype>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "virasoro/bosonic.hpp"
#include "virasoro/fermionic.hpp"
#include "virasoro/paths.hpp"
#include "virasoro/verify.hpp"

using json = nlohmann::ordered_json;
using namespace vir;

namespace {

enum Exit { kEqual = 0, kMismatch = 1, kUsage = 2 };

json coeff_json(const Coeff& c) {
  if (c.fits_slong_p()) return c.get_si();
  return c.get_str();
}

json to_json(const QSeries& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(coeff_json(c));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

json to_json(const QPoly& p) {
  json out = json::array();
  for (const auto& [e, c] : p.terms()) out.push_back({e / 4, c.get_str()});
  return out;
}

json to_json(const Run& r) { return {{"tau", r.tau}, {"sigma", r.sigma}, {"delta", r.delta}}; }

json to_json(const FermExpr& e) {
  json terms = json::array();
  for (const auto& t : e.terms) {
    json term{{"kind", t.kind == TermKind::F ? "F" : "F_tilde"},
              {"left", to_json(t.left.run)},
              {"right", to_json(t.right.run)},
              {"u_left", components(t.left.u)},
              {"u_right", components(t.right.u)},
              {"gamma", t.gamma.gamma}};
    if (t.L) term["gamma_prime"] = {{"c", t.gamma.gamma_prime.c}, {"l", t.gamma.gamma_prime.l}};
    terms.push_back(term);
  }
  json out{{"p", e.p}, {"pp", e.pp}, {"labels", e.labels}, {"terms", terms}};
  out["extra"] = e.extra.empty() ? json(nullptr) : to_json(e.extra.front());
  return out;
}

json to_json(const ModelData& M) {
  std::vector<long> T, Tp, Tt, Ttp;
  for (int j = 0; j < M.t; ++j) {
    T.push_back(M.kappa[static_cast<std::size_t>(j)]);
    Tp.push_back(M.pp - M.kappa[static_cast<std::size_t>(j)]);
    if (j > M.t1()) {
      Tt.push_back(M.kappa_t[static_cast<std::size_t>(j)]);
      Ttp.push_back(M.p - M.kappa_t[static_cast<std::size_t>(j)]);
    }
  }
  return {{"p", M.p},
          {"pp", M.pp},
          {"cf", M.cf},
          {"n", M.n},
          {"t", M.t},
          {"t_k", M.tk},
          {"y_k", M.y},
          {"z_k", M.z},
          {"kappa", M.kappa},
          {"kappa_tilde", M.kappa_t},
          {"l", std::vector<long>(M.l.begin() + (M.l.empty() ? 0 : 1), M.l.end())},
          {"T", T},
          {"T_prime", Tp},
          {"T_tilde", Tt},
          {"T_tilde_prime", Ttp},
          {"xi", M.xi},
          {"xi_tilde", M.xi_t}};
}

template <class Seq>
std::string join(const Seq& v, const char* sep = ",") {
  std::ostringstream os;
  bool first = true;
  for (const auto& x : v) {
    os << (first ? "" : sep) << x;
    first = false;
  }
  return os.str();
}

std::string env_of(const std::string& flag) {
  std::string out = "VF_";
  for (char ch : flag) out += ch == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

// Every option is also read from VF_<NAME>.
template <class T>
CLI::Option* opt(CLI::App* app, const std::string& name, T& var, const std::string& help) {
  return app->add_option("--" + name, var, help)->envname(env_of(name));
}

struct Common {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

struct TreeArgs {
  std::string membership = "T";
  bool sigma_tilde_t1 = false;
  void add(CLI::App* app) {
    opt(app, "membership", membership, "reading of heights in both T and T': T, T-prime or strict")
        ->check(CLI::IsMember({"T", "T-prime", "strict"}));
    app->add_flag("--sigma-tilde-t1", sigma_tilde_t1, "r = 1 variant with sigma~_1 = t_1")->envname("VF_SIGMA_TILDE_T1");
  }
  TreeConfig config() const {
    TreeConfig c;
    c.membership = membership == "T" ? Membership::prefer_T
                   : membership == "T-prime" ? Membership::prefer_T_prime
                                             : Membership::strict;
    c.sigma_tilde_t1 = sigma_tilde_t1;
    return c;
  }
};

struct ModelArgs {
  int p = 0, pp = 0;
  void add(CLI::App* app) {
    opt(app, "p", p, "p")->required();
    opt(app, "pp", pp, "p'")->required();
  }
};

void print_model(const Common& g, const ModelData& M) {
  if (g.json()) {
    std::cout << to_json(M).dump() << "\n";
    return;
  }
  json j = to_json(M);
  for (auto it = j.begin(); it != j.end(); ++it) std::cout << it.key() << " = " << it.value().dump() << "\n";
}

std::string report_line(const VerifyReport& r) {
  std::ostringstream os;
  if (!r.error.empty()) {
    os << "ERROR " << case_label(r.id) << ": " << r.error;
  } else if (r.mismatch) {
    const auto& m = *r.mismatch;
    os << "MISMATCH " << case_label(r.id) << ": " << m.left << " vs " << m.right;
    if (m.exponent >= 0) os << " at q^" << m.exponent;
    os << ": " << m.left_value << " vs " << m.right_value;
  } else {
    os << "EQUAL " << case_label(r.id) << " [" << join(r.methods, " = ") << "]";
  }
  os << " ms=" << static_cast<long>(r.elapsed_ms);
  return os.str();
}

json report_json(const VerifyReport& r) {
  json id{{"kind", kind_name(r.id.kind)}};
  if (r.id.kind == CorpusKind::golden)
    id["name"] = r.id.name;
  else
    id["labels"] = r.id.labels;
  json out{{"case", id}, {"methods", r.methods}};
  if (!r.error.empty())
    out["result"] = {{"error", r.error}};
  else if (r.mismatch)
    out["result"] = {{"mismatch",
                      {{"left", r.mismatch->left},
                       {"right", r.mismatch->right},
                       {"exponent", r.mismatch->exponent},
                       {"left_value", r.mismatch->left_value},
                       {"right_value", r.mismatch->right_value}}}};
  else
    out["result"] = "equal";
  out["elapsed_ms"] = r.elapsed_ms;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fermionic and bosonic Virasoro characters, path generating functions and corpus checks"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (subcommand keys as [verify] sections or verify.key)");
  Common g;
  opt(&app, "format", g.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  int code = kEqual;

  // model
  auto* model = app.add_subcommand("model", "continued-fraction data of the (p,p')-model");
  ModelArgs mm;
  mm.add(model);
  model->callback([&] { print_model(g, build_model(mm.p, mm.pp)); });

  // tree
  auto* tree = app.add_subcommand("tree", "Takahashi tree for a, or truncated tree for r, with leaf runs");
  ModelArgs tm;
  tm.add(tree);
  std::optional<int> tree_a, tree_r;
  TreeArgs tt;
  tt.add(tree);
  opt(tree, "a", tree_a, "height a (Takahashi tree)");
  opt(tree, "r", tree_r, "label r (truncated tree)");
  tree->callback([&] {
    if (tree_a.has_value() == tree_r.has_value()) throw CLI::ValidationError("tree", "give exactly one of --a, --r");
    ModelData M = build_model(tm.p, tm.pp);
    Tree t = tree_a ? takahashi_tree(M, *tree_a) : truncated_tree(M, *tree_r);
    json leaves = json::array();
    for (const auto& leaf : t.leaves) {
      Run run = run_of_leaf(M, t, leaf, tt.config());
      leaves.push_back({{"address", leaf},
                        {"run", to_json(run)},
                        {"u", components(u_of_run(M, run))},
                        {"Delta", components(delta_of_run(M, run))}});
    }
    if (g.json()) {
      std::cout << json{{"model", to_json(M)}, {"tree", tree_to_string(t)}, {"leaves", leaves}}.dump() << "\n";
      return;
    }
    std::cout << tree_to_string(t);
    for (const auto& l : leaves)
      std::cout << "leaf " << l["address"].get<std::string>() << " run " << l["run"].dump() << " u " << l["u"].dump()
                << " Delta " << l["Delta"].dump() << "\n";
  });

  // char
  auto* chr = app.add_subcommand("char", "character chi_{r,s} to a given order");
  ModelArgs cm;
  cm.add(chr);
  int r = 0, s = 0, order = 21;
  std::string cmethod = "fermionic";
  bool ctrace = false;
  TreeArgs ct;
  ct.add(chr);
  opt(chr, "r", r, "r")->required();
  opt(chr, "s", s, "s")->required();
  opt(chr, "order", order, "number of coefficients")->check(CLI::PositiveNumber);
  opt(chr, "method", cmethod, "fermionic, bosonic or product")->check(CLI::IsMember({"fermionic", "bosonic", "product"}));
  chr->add_flag("--trace", ctrace, "emit the fermionic expression tree");
  chr->callback([&] {
    ModelData M = build_model(cm.p, cm.pp);
    QSeries series;
    std::optional<FermExpr> expr;
    if (cmethod == "fermionic") {
      auto res = character_fermionic(M, r, s, order, ct.config());
      series = res.series;
      expr = res.expr;
    } else if (cmethod == "bosonic") {
      series = character_bosonic(M, r, s, order);
    } else {
      series = character_product(M, r, s, order);
    }
    if (g.json()) {
      json out = to_json(series);
      if (ctrace && expr) out["expr"] = to_json(*expr);
      std::cout << out.dump() << "\n";
      return;
    }
    std::cout << series.to_string() << "\n";
    if (ctrace && expr) std::cout << expr_to_string(*expr);
  });

  // finchar
  auto* fin = app.add_subcommand("finchar", "finitized character chi_{a,b,c}(L)");
  ModelArgs fm;
  fm.add(fin);
  int a = 0, b = 0, c = 0, L = 0;
  std::string fmethod = "fermionic";
  bool ftrace = false;
  TreeArgs ft;
  ft.add(fin);
  opt(fin, "a", a, "a")->required();
  opt(fin, "b", b, "b")->required();
  opt(fin, "c", c, "c")->required();
  opt(fin, "L", L, "path length")->required();
  opt(fin, "method", fmethod, "fermionic, bosonic or paths")->check(CLI::IsMember({"fermionic", "bosonic", "paths"}));
  fin->add_flag("--trace", ftrace, "emit the fermionic expression tree");
  fin->callback([&] {
    ModelData M = build_model(fm.p, fm.pp);
    QPoly poly;
    std::optional<FermExpr> expr;
    if (fmethod == "fermionic") {
      auto res = finitized_fermionic(M, a, b, c, L, ft.config());
      poly = res.poly;
      expr = res.expr;
    } else if (fmethod == "bosonic") {
      poly = finitized_bosonic(M, a, b, c, L);
    } else {
      poly = gen_fn(M, a, b, c, L);
    }
    if (g.json()) {
      json out{{"poly", to_json(poly)}};
      if (ftrace && expr) out["expr"] = to_json(*expr);
      std::cout << out.dump() << "\n";
      return;
    }
    std::cout << poly.to_string() << "\n";
    if (ftrace && expr) std::cout << expr_to_string(*expr);
  });

  // paths
  auto* paths = app.add_subcommand("paths", "enumerate paths and their generating function");
  ModelArgs pm;
  pm.add(paths);
  int pa = 0, pb = 0, pc = 0, pL = 0, cap = kDefaultPathCap;
  std::vector<int> leaves;
  bool dump = false;
  opt(paths, "a", pa, "a")->required();
  opt(paths, "b", pb, "b")->required();
  opt(paths, "c", pc, "c")->required();
  opt(paths, "L", pL, "path length")->required();
  opt(paths, "cap", cap, "largest L enumerated");
  opt(paths, "mazy-from-leaves", leaves, "leaf indices i,j (1-based) into the trees of a and b")
      ->delimiter(',')
      ->expected(2);
  paths->add_flag("--dump", dump, "print each path and its weight");
  paths->callback([&] {
    ModelData M = build_model(pm.p, pm.pp);
    std::optional<MazySpec> spec;
    if (!leaves.empty()) {
      auto UL = u_set(M, pa), UR = u_set(M, pb);
      auto in = [](int i, std::size_t n) { return i >= 1 && static_cast<std::size_t>(i) <= n; };
      if (!in(leaves[0], UL.size()) || !in(leaves[1], UR.size()))
        throw CLI::ValidationError("--mazy-from-leaves", "leaf index out of range");
      spec = mazy_from_runs(M, UL[static_cast<std::size_t>(leaves[0] - 1)].run, UR[static_cast<std::size_t>(leaves[1] - 1)].run);
    }
    QPoly poly = spec ? gen_fn_mazy(M, pa, pb, pc, pL, *spec, cap) : gen_fn(M, pa, pb, pc, pL, cap);
    json dumped = json::array();
    if (dump) {
      if (pL > cap) throw CapExceeded("L exceeds the path cap");
      for_each_path(M, pa, pb, pL, [&](const Path& h) {
        if (spec && !mazy_compliant(h, *spec, M.pp)) return;
        long w = weight(M, h, pc);
        if (g.json())
          dumped.push_back({{"heights", h.h}, {"weight", w}});
        else
          std::cout << join(h.h) << " " << w << "\n";
      });
    }
    if (g.json()) {
      json out{{"poly", to_json(poly)}};
      if (spec) out["mazy"] = {{"mu", spec->mu}, {"mu_star", spec->mu_star}, {"nu", spec->nu}, {"nu_star", spec->nu_star}};
      if (dump) out["paths"] = dumped;
      std::cout << out.dump() << "\n";
      return;
    }
    std::cout << poly.to_string() << "\n";
  });

  // verify
  auto* ver = app.add_subcommand("verify", "check a corpus of identities exactly");
  CorpusSpec spec;
  std::vector<std::string> kinds{"finitized"};
  int jobs = 0;
  opt(ver, "kinds", kinds, "finitized, character, product, golden")->delimiter(',');
  opt(ver, "min-pp", spec.min_pp, "smallest p'");
  opt(ver, "max-pp", spec.max_pp, "largest p'");
  opt(ver, "min-p", spec.min_p, "smallest p");
  opt(ver, "order", spec.order, "character coefficients compared");
  opt(ver, "max-L", spec.max_L, "largest L for finitized cases");
  opt(ver, "path-cap", spec.path_cap, "largest L for path enumeration");
  opt(ver, "jobs", jobs, "workers; 1 runs sequentially, 0 uses every core");
  ver->callback([&] {
    for (const auto& k : kinds) {
      auto kind = parse_kind(k);
      if (!kind) throw CLI::ValidationError("--kinds", "unknown corpus " + k);
      spec.kinds.push_back(*kind);
    }
    auto reports = jobs == 1 ? run_serial(spec) : run_parallel(spec, jobs);
    std::size_t bad = 0;
    for (const auto& rep : reports) {
      if (!rep.equal()) ++bad;
      std::cout << (g.json() ? report_json(rep).dump() : report_line(rep)) << "\n";
    }
    if (!g.json()) std::cout << "cases " << reports.size() << " mismatches " << bad << "\n";
    code = bad == 0 ? kEqual : kMismatch;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
