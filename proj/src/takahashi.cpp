#include "virasoro/takahashi.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

namespace vir {

namespace {

// One family of lengths: kappa over [0, t] with modulus p', or kappa~ over [t1+1, t] with modulus p.
struct Lengths {
  const std::vector<long>& len;
  int lo;
  int t;
  long P;

  static Lengths of(const ModelData& M, Flavor f) {
    if (f == Flavor::takahashi) return {M.kappa, 0, M.t, M.pp};
    return {M.kappa_t, M.t1() + 1, M.t, M.p};
  }
  long operator[](int j) const { return len[static_cast<std::size_t>(j)]; }
  bool in_S(long v) const {
    for (int j = lo; j < t; ++j)
      if ((*this)[j] == v) return true;
    return false;
  }
  bool in_S_prime(long v) const { return in_S(P - v); }
  int index_of(long v) const {
    for (int j = lo; j <= t; ++j)
      if ((*this)[j] == v) return j;
    throw OutOfRange("value " + std::to_string(v) + " is not a length");
  }
  int largest_below(long v) const {
    int x = -1;
    for (int j = lo; j < t; ++j)
      if ((*this)[j] < v) x = j;
    if (x < 0) throw OutOfRange("no length below " + std::to_string(v));
    return x;
  }
  std::set<long> both() const {
    std::set<long> s;
    for (int j = lo; j < t; ++j) {
      s.insert((*this)[j]);
      s.insert(P - (*this)[j]);
    }
    return s;
  }
};

Tree build_tree(const ModelData& M, long a, Flavor flavor) {
  Lengths L = Lengths::of(M, flavor);
  if (a < 1 || a >= L.P) throw OutOfRange("tree target " + std::to_string(a));
  Tree tree;
  tree.flavor = flavor;
  tree.target = a;
  auto all = L.both();

  auto add_leaf = [&](const std::string& parent) {
    tree.nodes.push_back({parent + "0", a, NodeKind::leaf});
    tree.values[parent + "0"] = a;
    tree.values[parent + "1"] = a;
    tree.leaves.push_back(parent + "0");
  };

  // p = 2 leaves the truncated sets empty; the tree is then a bare leaf
  if (all.count(a) || all.empty()) {
    tree.nodes.push_back({"", 0, NodeKind::through});
    add_leaf("");
    return tree;
  }
  tree.nodes.push_back({"", 0, NodeKind::branch});

  std::function<void(const std::string&, long, int)> grow = [&](const std::string& addr, long v, int depth) {
    if (depth > 2 * (M.n + 2) + 4) throw OutOfRange("tree deeper than expected");
    tree.values[addr] = v;
    std::size_t slot = tree.nodes.size();
    tree.nodes.push_back({addr, v, NodeKind::branch});
    long gap = std::labs(v - a);
    if (L.in_S(gap)) {
      tree.nodes[slot].kind = NodeKind::through;
      add_leaf(addr);
      return;
    }
    int x = L.largest_below(gap);
    int ik = addr.back() - '0';
    long sign = ik == 0 ? 1 : -1;
    for (int i = 0; i <= 1; ++i) grow(addr + char('0' + i), v + sign * L[x + std::abs(ik - i)], depth + 1);
  };

  auto below = std::prev(all.lower_bound(a));
  auto above = all.upper_bound(a);
  grow("0", *below, 1);
  grow("1", *above, 1);
  return tree;
}

std::string flip(char c) { return c == '0' ? "1" : "0"; }

}  // namespace

long Tree::at(const std::string& address) const {
  auto it = values.find(address);
  if (it == values.end()) throw OutOfRange("no tree node at '" + address + "'");
  return it->second;
}

Tree takahashi_tree(const ModelData& M, long a) { return build_tree(M, a, Flavor::takahashi); }
Tree truncated_tree(const ModelData& M, long r) { return build_tree(M, r, Flavor::truncated); }

TVec zero_tvec(const ModelData& M) { return TVec(static_cast<std::size_t>(M.t + 2), 0); }

TVec e_vec(const ModelData& M, int j) {
  TVec v = zero_tvec(M);
  if (j >= 1 && j <= M.t) v[static_cast<std::size_t>(j)] = 1;
  return v;
}

TVec u_ij(const ModelData& M, int i, int j) {
  TVec v = zero_tvec(M);
  auto bump = [&](int idx, int by) {
    if (idx >= 1 && idx <= M.t) v[static_cast<std::size_t>(idx)] += by;
  };
  bump(i, 1);
  bump(j, -1);
  for (int k = 1; k <= M.n; ++k)
    if (i <= M.t_(k) && M.t_(k) < j) bump(M.t_(k), -1);
  return v;
}

std::vector<int> components(const TVec& v) {
  if (v.size() < 2) return {};
  return {v.begin() + 1, v.end() - 1};
}

Run run_of_leaf(const ModelData& M, const Tree& tree, const std::string& leaf, const TreeConfig& cfg) {
  Lengths L = Lengths::of(M, tree.flavor);
  int d = static_cast<int>(leaf.size());
  Run run;
  run.flavor = tree.flavor;

  long v1 = tree.at(flip(leaf[0]));
  bool in_T = L.in_S(v1), in_Tp = L.in_S_prime(v1);
  bool degenerate = !in_T && !in_Tp && L.lo >= L.t;
  if (!in_T && !in_Tp && !degenerate) throw OutOfRange("first node is not a length");
  bool use_T = in_T || degenerate;
  if (in_T && in_Tp) {
    if (cfg.membership == Membership::strict)
      throw AmbiguousMembership(std::to_string(v1) + " lies in both T and T'");
    use_T = cfg.membership == Membership::prefer_T;
  }
  run.tau.push_back(M.t + 1);
  run.delta.push_back(use_T ? -1 : 1);
  int s1 = L.index_of(use_T ? v1 : L.P - v1);
  if (cfg.sigma_tilde_t1 && tree.flavor == Flavor::truncated && tree.target == 1 && s1 == M.t1() + 1) s1 = M.t1();
  run.sigma.push_back(s1);

  for (int j = 2; j <= d; ++j) {
    std::string pre1 = leaf.substr(0, static_cast<std::size_t>(j - 1));
    std::string pre2 = leaf.substr(0, static_cast<std::size_t>(j - 2));
    run.delta.push_back(pre1.back() == '0' ? -1 : 1);
    run.sigma.push_back(L.index_of(std::labs(tree.at(pre1) - tree.at(pre1 + flip(leaf[static_cast<std::size_t>(j - 1)])))));
    run.tau.push_back(L.index_of(tree.at(pre2 + "1") - tree.at(pre2 + "0")));
  }
  return run;
}

TVec u_of_run(const ModelData& M, const Run& run) {
  TVec u = zero_tvec(M);
  for (int m = 0; m < run.d(); ++m) {
    TVec w = u_ij(M, run.sigma[static_cast<std::size_t>(m)], run.tau[static_cast<std::size_t>(m)]);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += w[i];
  }
  if (run.delta[0] == 1 && M.t >= 1) u[static_cast<std::size_t>(M.t)] += 1;
  return u;
}

TVec delta_of_run(const ModelData& M, const Run& run) {
  TVec u = zero_tvec(M);
  for (int m = 0; m < run.d(); ++m) {
    TVec w = u_ij(M, run.sigma[static_cast<std::size_t>(m)], run.tau[static_cast<std::size_t>(m)]);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += run.delta[static_cast<std::size_t>(m)] * w[i];
  }
  if (run.delta[0] == 1 && M.t >= 1) u[static_cast<std::size_t>(M.t)] -= 1;
  return u;
}

namespace {
std::vector<UVector> vectors_of(const ModelData& M, const Tree& tree, const TreeConfig& cfg) {
  std::vector<UVector> out;
  for (const auto& leaf : tree.leaves) {
    Run run = run_of_leaf(M, tree, leaf, cfg);
    out.push_back({u_of_run(M, run), run, tree.target});
  }
  return out;
}
}  // namespace

std::vector<UVector> u_set(const ModelData& M, long a, const TreeConfig& cfg) {
  return vectors_of(M, takahashi_tree(M, a), cfg);
}

std::vector<UVector> u_tilde_set(const ModelData& M, long r, const TreeConfig& cfg) {
  return vectors_of(M, truncated_tree(M, r), cfg);
}

std::vector<UVector> u_split(const ModelData& M, long a, int Delta, const TreeConfig& cfg) {
  std::vector<UVector> out;
  for (auto& u : u_set(M, a, cfg))
    if (u.delta_last() == Delta) out.push_back(std::move(u));
  return out;
}

int tau_of(const ModelData& M, const Run& run) {
  if (run.d() > 1) return run.tau.back();
  return run.sigma[0] < M.t_(M.n) ? M.t_(M.n) : M.t;
}

Run run_plus(const ModelData& M, const Run& run) {
  if (run.sigma_last() + 1 > M.t) throw IndexOverflow("sigma_d + 1 exceeds t");
  Run r = run;
  r.sigma.back() += 1;
  return r;
}

Run run_plusplus(const ModelData& M, const Run& run) {
  if (run.sigma_last() + 2 > M.t) throw IndexOverflow("sigma_d + 2 exceeds t");
  Run r = run;
  r.sigma.back() += 2;
  return r;
}

Run reduce_run(const Run& run) {
  Run r;
  r.flavor = run.flavor;
  for (int j = 0; j < run.d(); ++j) {
    auto i = static_cast<std::size_t>(j);
    if (run.tau[i] == run.sigma[i]) continue;
    r.tau.push_back(run.tau[i]);
    r.sigma.push_back(run.sigma[i]);
    r.delta.push_back(run.delta[i]);
  }
  return r;
}

bool is_naive(const ModelData& M, const Run& run) {
  int d = run.d();
  auto S = [&](int j) { return run.sigma[static_cast<std::size_t>(j - 1)]; };
  auto T = [&](int j) { return run.tau[static_cast<std::size_t>(j - 1)]; };
  auto D = [&](int j) { return run.delta[static_cast<std::size_t>(j - 1)]; };
  int tn = M.t_(M.n);
  for (int j = 1; j < d; ++j) {
    if (j == 1 && S(1) > tn) {
      int want;
      if (D(2) == D(1)) want = M.n >= 1 ? M.t_(M.n - 1) : -2;
      else if (M.n >= 1 && M.cf[static_cast<std::size_t>(M.n - 1)] > 1) want = tn - 1;
      else want = M.n >= 2 ? M.t_(M.n - 2) : -2;
      if (T(2) != want) return false;
      continue;
    }
    int want = D(j + 1) == D(j) ? M.t_(zeta(M, S(j) - 1)) : M.t_(zeta(M, S(j)));
    if (T(j + 1) != want) return false;
  }
  return true;
}

bool is_reduced(const ModelData&, const Run& run) {
  for (int j = 0; j + 1 < run.d(); ++j) {
    auto i = static_cast<std::size_t>(j);
    if (!(run.sigma[i + 1] < run.tau[i + 1] && run.tau[i + 1] < run.sigma[i])) return false;
  }
  return run.d() == 0 || run.sigma.back() >= 0;
}

UVector with_run(const ModelData& M, const UVector& u, const Run& run) {
  return {u_of_run(M, run), run, u.source};
}

FlatSharp flat_sharp(const ModelData& M, const TVec& u) {
  FlatSharp fs;
  fs.flat.assign(static_cast<std::size_t>(std::max(M.t, 1)), 0);
  fs.sharp.assign(static_cast<std::size_t>(std::max(M.t, 1)), 0);
  for (int j = 1; j < M.t; ++j) {
    auto i = static_cast<std::size_t>(j);
    (zeta(M, j) % 2 == 1 ? fs.flat : fs.sharp)[i] = u[i];
  }
  for (int j = M.t1() + 2; j <= M.t; ++j) fs.bar.push_back(u[static_cast<std::size_t>(j)]);
  for (int j = M.t1() + 1; j < M.t; ++j) {
    fs.bar_flat.push_back(fs.flat[static_cast<std::size_t>(j)]);
    fs.bar_sharp.push_back(fs.sharp[static_cast<std::size_t>(j)]);
  }
  return fs;
}

long run_endpoint(const ModelData& M, const Run& run) {
  Lengths L = Lengths::of(M, run.flavor);
  long a = run.delta[0] == -1 ? L[run.sigma[0]] : L.P - L[run.sigma[0]];
  for (int m = 1; m < run.d(); ++m) {
    auto i = static_cast<std::size_t>(m);
    a += run.delta[i] * (L[run.tau[i]] - L[run.sigma[i]]);
  }
  return a;
}

std::string run_to_string(const Run& run) {
  std::ostringstream os;
  auto list = [&](const std::vector<int>& v) {
    os << "{";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
  };
  os << "{";
  list(run.tau);
  os << ",";
  list(run.sigma);
  os << ",";
  list(run.delta);
  os << "}";
  return os.str();
}

std::string tree_to_string(const Tree& tree) {
  std::ostringstream os;
  for (const auto& node : tree.nodes) {
    os << std::string(2 * node.address.size(), ' ');
    if (node.address.empty()) os << "root";
    else os << "a_" << node.address << " = " << node.value;
    os << " [" << (node.kind == NodeKind::branch ? "branch" : node.kind == NodeKind::through ? "through" : "leaf")
       << "]\n";
  }
  return os.str();
}

}  // namespace vir
