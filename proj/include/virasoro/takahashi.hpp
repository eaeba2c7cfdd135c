#pragma once
// Takahashi trees, truncated trees, runs and the vectors built from them.

#include <map>
#include <string>
#include <vector>

#include "virasoro/cfmodel.hpp"

namespace vir {

enum class Flavor { takahashi, truncated };

// How to read a value lying in both T and T' (only when p = 1 or p = p'-1).
enum class Membership { prefer_T, prefer_T_prime, strict };

struct TreeConfig {
  Membership membership = Membership::prefer_T;
  bool sigma_tilde_t1 = false;  // r = 1 variant: sigma~_1 = t_1 instead of t_1 + 1
};

enum class NodeKind { branch, through, leaf };

struct TreeNode {
  std::string address;  // bits i_1..i_k, empty for the root
  long value = 0;       // unused at the root
  NodeKind kind = NodeKind::leaf;
};

struct Tree {
  Flavor flavor = Flavor::takahashi;
  long target = 0;
  std::vector<TreeNode> nodes;           // preorder, root first
  std::map<std::string, long> values;    // includes the sibling convention for leaves
  std::vector<std::string> leaves;       // preorder

  long at(const std::string& address) const;
};

Tree takahashi_tree(const ModelData& M, long a);
Tree truncated_tree(const ModelData& M, long r);

// j-th triple at index j-1
struct Run {
  std::vector<int> tau, sigma, delta;
  Flavor flavor = Flavor::takahashi;
  int d() const { return static_cast<int>(sigma.size()); }
  int sigma_last() const { return sigma.back(); }
  int delta_last() const { return delta.back(); }
  friend bool operator==(const Run&, const Run&) = default;
};

// Components 1..t live at indices 1..t; entries 0 and t+1 are always zero.
using TVec = std::vector<int>;
TVec zero_tvec(const ModelData& M);
TVec e_vec(const ModelData& M, int j);
TVec u_ij(const ModelData& M, int i, int j);
std::vector<int> components(const TVec& v);  // the t proper components

struct UVector {
  TVec u;
  Run run;
  long source = 0;  // the a (or r) whose tree produced it
  int delta_last() const { return run.delta_last(); }
  int sigma_last() const { return run.sigma_last(); }
};

Run run_of_leaf(const ModelData& M, const Tree& tree, const std::string& leaf, const TreeConfig& cfg = {});
TVec u_of_run(const ModelData& M, const Run& run);
TVec delta_of_run(const ModelData& M, const Run& run);

std::vector<UVector> u_set(const ModelData& M, long a, const TreeConfig& cfg = {});
std::vector<UVector> u_tilde_set(const ModelData& M, long r, const TreeConfig& cfg = {});
std::vector<UVector> u_split(const ModelData& M, long a, int Delta, const TreeConfig& cfg = {});

Run run_plus(const ModelData& M, const Run& run);
Run run_plusplus(const ModelData& M, const Run& run);
int tau_of(const ModelData& M, const Run& run);
Run reduce_run(const Run& run);
bool is_naive(const ModelData& M, const Run& run);
bool is_reduced(const ModelData& M, const Run& run);

UVector with_run(const ModelData& M, const UVector& u, const Run& run);

struct FlatSharp {
  std::vector<int> flat, sharp;           // indices 1..t-1 at 1..t-1 (index 0 unused)
  std::vector<int> bar;                   // u_{t1+2}..u_t
  std::vector<int> bar_flat, bar_sharp;   // components t1+1..t-1
};
FlatSharp flat_sharp(const ModelData& M, const TVec& u);

// Height reached from a run: the a (or r) it encodes.
long run_endpoint(const ModelData& M, const Run& run);

std::string run_to_string(const Run& run);
std::string tree_to_string(const Tree& tree);

}  // namespace vir
