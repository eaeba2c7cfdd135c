#pragma once
// Brute-force enumeration of RSOS paths in the (p,p')-model and their weights.

#include <functional>
#include <optional>
#include <vector>

#include "virasoro/qalg.hpp"
#include "virasoro/takahashi.hpp"

namespace vir {

inline constexpr int kDefaultPathCap = 18;

struct Path {
  std::vector<int> h;  // h_0..h_L
  int length() const { return static_cast<int>(h.size()) - 1; }
  int a() const { return h.front(); }
  int b() const { return h.back(); }
  friend bool operator==(const Path&, const Path&) = default;
};

// Visits every path from a to b of length L, lexicographically by heights.
// Empty when L - (b - a) is odd.
void for_each_path(const ModelData& M, int a, int b, int L, const std::function<void(const Path&)>& visit);
std::vector<Path> enumerate_paths(const ModelData& M, int a, int b, int L);

// Original weighting with post-segment h_{L+1} = c (0 and p' allowed).
long weight(const ModelData& M, const Path& h, int c);
// Modified weighting of winged paths.
long weight_tilde(const ModelData& M, const Path& h, int e, int f);

struct StrikingSequence {
  std::vector<long> a, b;  // per line: non-scoring and scoring vertex counts
  int e = 0, f = 0, d = 0;
  int pi = 0;              // parity of the first band (1 = odd)
  int length = 0;

  long w(std::size_t i) const { return a[i] + b[i]; }
  long m() const;
  long alpha() const;
  long beta() const;
};

StrikingSequence striking(const ModelData& M, const Path& h, int e, int f);
long weight_via_striking(const StrikingSequence& s);
Path path_from_striking(int a, const StrikingSequence& s);

// Path parameters.
inline long alpha_ab(int a, int b) { return b - a; }
long beta_abef(const ModelData& M, int a, int b, int e, int f);

QPoly gen_fn(const ModelData& M, int a, int b, int c, int L, int cap = kDefaultPathCap);
QPoly gen_fn_tilde(const ModelData& M, int a, int b, int e, int f, int L, std::optional<long> m = std::nullopt,
                   int cap = kDefaultPathCap);

// Checkpoint heights for mazy-compliant paths; 0 and p' are legal entries.
struct MazySpec {
  std::vector<int> mu, mu_star, nu, nu_star;
  friend bool operator==(const MazySpec&, const MazySpec&) = default;
};

// mu, mu* from a left run (the right run gives nu, nu* the same way).
std::pair<std::vector<int>, std::vector<int>> mazy_pair(const ModelData& M, const Run& run);
MazySpec mazy_from_runs(const ModelData& M, const Run& left, const Run& right);
bool mazy_compliant(const Path& h, const MazySpec& spec, int pp);

QPoly gen_fn_mazy(const ModelData& M, int a, int b, int c, int L, const MazySpec& spec, int cap = kDefaultPathCap);
QPoly gen_fn_tilde_mazy(const ModelData& M, int a, int b, int e, int f, int L, const MazySpec& spec,
                        int cap = kDefaultPathCap);

}  // namespace vir
