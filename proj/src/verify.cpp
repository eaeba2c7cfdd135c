#include "virasoro/verify.hpp"

#include <omp.h>

#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "virasoro/bosonic.hpp"
#include "virasoro/fermionic.hpp"

namespace vir {

const char* kind_name(CorpusKind k) {
  switch (k) {
    case CorpusKind::finitized: return "finitized";
    case CorpusKind::character: return "character";
    case CorpusKind::product: return "product";
    case CorpusKind::golden: return "golden";
  }
  return "?";
}

std::optional<CorpusKind> parse_kind(const std::string& s) {
  for (auto k : {CorpusKind::finitized, CorpusKind::character, CorpusKind::product, CorpusKind::golden})
    if (s == kind_name(k)) return k;
  return std::nullopt;
}

std::string case_label(const CaseId& id) {
  std::ostringstream os;
  os << kind_name(id.kind);
  if (id.kind == CorpusKind::golden) {
    os << " " << id.name;
    return os.str();
  }
  static const char* fin[] = {"p", "pp", "a", "b", "c", "L"};
  static const char* chr[] = {"p", "pp", "r", "s"};
  const char* const* names = id.kind == CorpusKind::finitized ? fin : chr;
  for (std::size_t i = 0; i < id.labels.size(); ++i) os << " " << names[i] << "=" << id.labels[i];
  return os.str();
}

namespace {

std::vector<std::pair<int, int>> models(const CorpusSpec& spec, int min_p) {
  std::vector<std::pair<int, int>> out;
  for (int pp = std::max(2, spec.min_pp); pp <= spec.max_pp; ++pp)
    for (int p = std::max(min_p, spec.min_p); p < pp; ++p)
      if (std::gcd(p, pp) == 1) out.emplace_back(p, pp);
  return out;
}

const std::vector<std::string>& golden_names() {
  static const std::vector<std::string> names{
      "ex1.cf",         "ex1.runs",         "ex1.triple.11",     "ex1.triple.21",       "ex1.triple.31",
      "ex1.triple.12",  "ex1.triple.22",    "ex1.triple.32",     "ex2.gamma",           "ex2.gamma_prime",
      "ex2.decomposition", "ex2.limit",     "ex3.character",     "ex3.finitized"};
  return names;
}

}  // namespace

std::vector<CaseId> corpus_cases(const CorpusSpec& spec) {
  std::vector<CaseId> out;
  for (CorpusKind kind : spec.kinds) {
    switch (kind) {
      case CorpusKind::finitized:
        for (auto [p, pp] : models(spec, 1))
          for (int a = 1; a < pp; ++a)
            for (int b = 1; b < pp; ++b)
              for (int c : {b - 1, b + 1})
                for (int L = 0; L <= spec.max_L; ++L)
                  if ((L - a + b) % 2 == 0) out.push_back({kind, {p, pp, a, b, c, L}, {}});
        break;
      case CorpusKind::character:
      case CorpusKind::product:
        for (auto [p, pp] : models(spec, 2)) {
          ModelData M = kind == CorpusKind::product ? build_model(p, pp) : ModelData{};
          for (int r = 1; r < p; ++r)
            for (int s = 1; s < pp; ++s)
              if (kind == CorpusKind::character || has_product_form(M, r, s)) out.push_back({kind, {p, pp, r, s}, {}});
        }
        break;
      case CorpusKind::golden:
        for (const auto& n : golden_names()) out.push_back({kind, {}, n});
        break;
    }
  }
  return out;
}

namespace {

std::optional<Mismatch> compare(const std::string& ln, const QPoly& l, const std::string& rn, const QPoly& r) {
  if (l == r) return std::nullopt;
  std::set<Quarter> keys;
  for (const auto& [e, c] : l.terms()) keys.insert(e);
  for (const auto& [e, c] : r.terms()) keys.insert(e);
  for (Quarter e : keys)
    if (l.coeff(e) != r.coeff(e)) return Mismatch{ln, rn, static_cast<long>(e / 4), l.coeff(e).get_str(), r.coeff(e).get_str()};
  return std::nullopt;
}

std::optional<Mismatch> compare(const std::string& ln, const QSeries& l, const std::string& rn, const QSeries& r) {
  int k = first_difference(l, r);
  if (k < 0) return std::nullopt;
  return Mismatch{ln, rn, k, l[k].get_str(), r[k].get_str()};
}

std::optional<Mismatch> compare_values(const std::string& expected, const std::string& actual) {
  if (expected == actual) return std::nullopt;
  return Mismatch{"expected", "computed", -1, expected, actual};
}

Run make_run(std::vector<int> tau, std::vector<int> sigma, std::vector<int> delta) {
  Run r;
  r.tau = std::move(tau);
  r.sigma = std::move(sigma);
  r.delta = std::move(delta);
  return r;
}

const UVector& find_run(const std::vector<UVector>& set, const Run& run) {
  for (const auto& u : set)
    if (u.run.tau == run.tau && u.run.sigma == run.sigma && u.run.delta == run.delta) return u;
  throw OutOfRange("run " + run_to_string(run) + " is not a leaf run");
}

template <class Seq>
std::string join(const Seq& v) {
  std::ostringstream os;
  bool first = true;
  for (const auto& x : v) {
    os << (first ? "" : ",") << x;
    first = false;
  }
  return os.str();
}

std::string linear_in_L(const LinearInL& g) {
  std::ostringstream os;
  os << g.c;
  if (g.l != 0) os << (g.l > 0 ? "+" : "") << g.l << "L";
  return os.str();
}

TVec add(const TVec& a, const TVec& b) {
  TVec s = a;
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
  return s;
}

std::string counts(const FermExpr& e) {
  std::vector<std::size_t> per;
  for (const FermExpr* x = &e;; x = &x->extra.front()) {
    per.push_back(x->terms.size());
    if (x->extra.empty()) break;
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < per.size(); ++i) os << (i ? "+" : "") << per[i];
  os << "=" << e.total_terms();
  return os.str();
}

std::string chain_of(const FermExpr& e) {
  std::ostringstream os;
  bool first = true;
  for (auto [p, pp] : e.chain()) {
    os << (first ? "" : "->") << "(" << p << "," << pp << ")";
    first = false;
  }
  return os.str();
}

struct Ex1 {
  ModelData M = build_model(26, 109);
  std::vector<UVector> UL = u_set(M, 51), UR = u_tilde_set(M, 9);
  const UVector& left(int i) const {
    static const Run runs[3] = {make_run({13, 7}, {10, 4}, {1, -1}), make_run({13, 7, 3}, {10, 5, 0}, {-1, 1, -1}),
                                make_run({13, 7, 3}, {10, 6, 2}, {-1, 1, 1})};
    return find_run(UL, runs[i]);
  }
  const UVector& right(int j) const {
    static const Run runs[2] = {make_run({13, 7}, {11, 6}, {1, -1}), make_run({13, 7}, {9, 4}, {-1, 1})};
    return find_run(UR, runs[j]);
  }
};

struct Ex2 {
  ModelData M = build_model(53, 75);
  UVector uL = u_set(M, 72).at(0);
  std::vector<UVector> UR = u_set(M, 25);
  UVector r(int j) const {
    static const Run runs[3] = {make_run({10, 5}, {8, 0}, {1, -1}), make_run({10, 5, 2}, {7, 4, 0}, {-1, 1, -1}),
                                make_run({10, 5, 2}, {7, 5, 1}, {-1, 1, 1})};
    if (j < 3) return find_run(UR, runs[j]);
    const UVector& r3 = find_run(UR, runs[2]);
    return with_run(M, r3, run_plus(M, r3.run));
  }
};

std::optional<Mismatch> golden(const std::string& name) {
  if (name == "ex1.cf") return compare_values("4,5,5", join(build_model(26, 109).cf));
  if (name == "ex1.runs") {
    Ex1 e;
    std::vector<std::string> got;
    for (const auto* set : {&e.UL, &e.UR}) {
      std::set<std::string> s;
      for (const auto& u : *set) s.insert(run_to_string(u.run));
      got.push_back(join(s));
    }
    return compare_values(
        "{{13,7,3},{10,5,0},{-1,1,-1}},{{13,7,3},{10,6,2},{-1,1,1}},{{13,7},{10,4},{1,-1}} / "
        "{{13,7},{11,6},{1,-1}},{{13,7},{9,4},{-1,1}}",
        got[0] + " / " + got[1]);
  }
  if (name.rfind("ex1.triple.", 0) == 0) {
    static const char* want[3][2] = {
        {"-42; 1,0,0,-1,0,0,0,1; 1,1,1,0,1,1,1,0", "-42; 1,0,0,-1,0,1,0,0; 1,1,1,1,1,0,0,1"},
        {"-42; 0,1,0,-1,0,0,0,1; 0,0,1,1,1,0,1,1", "-42; 0,1,0,-1,0,1,0,0; 0,0,1,0,1,1,0,0"},
        {"-43; 0,0,1,-1,0,0,0,1; 1,1,1,1,1,0,1,1", "-43; 0,0,1,-1,0,1,0,0; 1,1,1,0,1,1,0,0"}};
    int i = name[11] - '1', j = name[12] - '1';
    Ex1 e;
    const UVector &uL = e.left(i), &uR = e.right(j);
    auto lin = flat_sharp(e.M, uL.u).bar_flat;
    auto sharp = flat_sharp(e.M, uR.u).bar_sharp;
    for (std::size_t k = 0; k < lin.size(); ++k) lin[k] += sharp[k];
    std::string got = std::to_string(gamma(e.M, uL.run, uR.run).gamma) + "; " + join(lin) + "; " +
                      join(parity_vectors(e.M, add(uL.u, uR.u)).Q_bar);
    return compare_values(want[i][j], got);
  }
  if (name == "ex2.gamma") {
    Ex2 e;
    return compare_values("-1624", std::to_string(gamma(e.M, e.uL.run, u_tilde_set(e.M, 17).at(0).run).gamma));
  }
  if (name == "ex2.gamma_prime") {
    Ex2 e;
    std::vector<std::string> got;
    for (int j = 0; j < 4; ++j) got.push_back(linear_in_L(gamma(e.M, e.uL.run, e.r(j).run, {72, 25}).gamma_prime));
    return compare_values("-1624+2L,-1624+2L,-1530,-1624", join(got));
  }
  if (name == "ex2.decomposition") {
    Ex2 e;
    FormContext fc{72, 25};
    for (long L = 1; L <= 11; L += 2) {
      QPoly d = F_finite_raw(e.M, e.uL, e.r(0), L, fc) + F_finite_raw(e.M, e.uL, e.r(1), L, fc) +
                F_finite_raw(e.M, e.uL, e.r(2), L, fc).shifted(2 * (L - 47)) +
                (QPoly::constant(1) - QPoly::monomial(4 * L)) * F_finite_raw(e.M, e.uL, e.r(3), L - 1, fc);
      if (auto m = compare("fermionic", finitized_fermionic(e.M, 72, 25, 24, L).poly, "F1+F2+F3+F4", finalize_integral(d)))
        return m;
    }
    return std::nullopt;
  }
  if (name == "ex2.limit") {
    Ex2 e;
    FormContext fc{72, 25};
    const int N = 12;
    const long L = 81;
    std::vector<std::string> vanish;
    for (int j = 0; j < 3; ++j) {
      QPoly f = F_finite_raw(e.M, e.uL, e.r(j), L, fc);
      if (j == 2) f = f.shifted(2 * (L - 47));
      vanish.push_back(f.below(4 * N).is_zero() ? "0" : "nonzero");
    }
    if (auto m = compare_values("0,0,0", join(vanish))) return m;
    QSeries f4 = QSeries::from_poly(finalize_integral(F_finite_raw(e.M, e.uL, e.r(3), L - 1, fc)), N);
    return compare("F4(L-1)", f4, "bosonic", character_bosonic(e.M, 17, 72, N));
  }
  if (name == "ex3.character") {
    auto ch = character_fermionic(build_model(51, 118), 27, 61, 8);
    return compare_values("24+6+1=31; (51,118)->(13,30)->(2,5)", counts(ch.expr) + "; " + chain_of(ch.expr));
  }
  if (name == "ex3.finitized") {
    auto fin = finitized_fermionic(build_model(51, 118), 61, 63, 62, 4);
    return compare_values("30+6+1=37; (51,118)->(13,30)->(2,5)", counts(fin.expr) + "; " + chain_of(fin.expr));
  }
  throw OutOfRange("unknown golden " + name);
}

}  // namespace

VerifyReport verify_case(const CaseId& id, const CorpusSpec& spec) {
  VerifyReport rep;
  rep.id = id;
  auto start = std::chrono::steady_clock::now();
  try {
    const auto& l = id.labels;
    switch (id.kind) {
      case CorpusKind::finitized: {
        rep.methods = {"paths", "bosonic", "fermionic"};
        ModelData M = build_model(l[0], l[1]);
        QPoly paths = gen_fn(M, l[2], l[3], l[4], l[5], spec.path_cap);
        QPoly bos = finitized_bosonic(M, l[2], l[3], l[4], l[5]);
        QPoly fer = finitized_fermionic(M, l[2], l[3], l[4], l[5]).poly;
        rep.mismatch = compare("paths", paths, "bosonic", bos);
        if (!rep.mismatch) rep.mismatch = compare("fermionic", fer, "bosonic", bos);
        break;
      }
      case CorpusKind::character: {
        rep.methods = {"fermionic", "bosonic"};
        ModelData M = build_model(l[0], l[1]);
        rep.mismatch = compare("fermionic", character_fermionic(M, l[2], l[3], spec.order).series, "bosonic",
                               character_bosonic(M, l[2], l[3], spec.order));
        break;
      }
      case CorpusKind::product: {
        rep.methods = {"product", "bosonic", "fermionic"};
        ModelData M = build_model(l[0], l[1]);
        QSeries bos = character_bosonic(M, l[2], l[3], spec.order);
        rep.mismatch = compare("product", character_product(M, l[2], l[3], spec.order), "bosonic", bos);
        if (!rep.mismatch)
          rep.mismatch = compare("fermionic", character_fermionic(M, l[2], l[3], spec.order).series, "bosonic", bos);
        break;
      }
      case CorpusKind::golden:
        rep.methods = {"expected", "computed"};
        rep.mismatch = golden(id.name);
        break;
    }
  } catch (const std::exception& e) {
    rep.error = e.what();
  }
  rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<VerifyReport> run_serial(const CorpusSpec& spec) {
  std::vector<VerifyReport> out;
  for (const auto& id : corpus_cases(spec)) out.push_back(verify_case(id, spec));
  return out;
}

std::vector<VerifyReport> run_parallel(const CorpusSpec& spec, int jobs) {
  const auto cases = corpus_cases(spec);
  std::vector<VerifyReport> out(cases.size());
  const int n = static_cast<int>(cases.size());
  const int workers = jobs > 0 ? jobs : available_workers();
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = verify_case(cases[static_cast<std::size_t>(i)], spec);
  return out;
}

int available_workers() { return omp_get_max_threads(); }

}  // namespace vir
