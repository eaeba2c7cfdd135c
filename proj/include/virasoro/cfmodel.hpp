#pragma once
// Continued-fraction data of p'/p and the band structure of the (p,p')-model.

#include <vector>

#include "virasoro/errors.hpp"

namespace vir {

struct ModelData {
  int p = 0;
  int pp = 0;                 // p'
  std::vector<int> cf;        // c_0..c_n
  int n = 0;                  // height
  int t = 0;                  // rank
  std::vector<int> tk;        // t_0..t_{n+1}
  std::vector<long> y, z;     // y_k, z_k stored at k+1 for -1 <= k <= n+1
  std::vector<long> kappa;    // kappa_0..kappa_t
  std::vector<long> kappa_t;  // truncated lengths, same indexing
  std::vector<long> l;        // l_1..l_t at the same index (l[0] unused)
  std::vector<long> xi, xi_t; // xi_0..xi_{2c_n-1}

  long Y(int k) const { return y[static_cast<std::size_t>(k + 1)]; }
  long Z(int k) const { return z[static_cast<std::size_t>(k + 1)]; }
  int t_(int k) const { return tk[static_cast<std::size_t>(k)]; }
  int t1() const { return tk[1]; }
  bool wide() const { return pp > 2 * p; }  // p' > 2p
};

ModelData build_model(int p, int pp);

// continued fraction of num/den with the trailing-1 absorption rule
std::vector<int> continued_fraction(long num, long den);

int zeta(const ModelData& M, int j);

enum class Parity { even, odd };
Parity band_parity(const ModelData& M, int h);

bool is_interfacial(const ModelData& M, int a);
bool is_multifacial(const ModelData& M, int a);
int rho(const ModelData& M, int a);

struct Omega {
  int r = 0;
  int side = 0;  // -1 for r^-, +1 for r^+, 0 for the infinite sentinel
  bool infinite() const { return side == 0; }
};
Omega omega(const ModelData& M, int a);
int delta_ae(const ModelData& M, int a, int e);

int eta(const ModelData& M, int s);
int eta_tilde(const ModelData& M, int r);

// greedy expression s = sum of kappa over the returned indices (increasing)
std::vector<int> takahashi_decompose(const ModelData& M, long s);
// same over truncated lengths with indices above t_1
std::vector<int> truncated_decompose(const ModelData& M, long r);

// Segment data for the extra term at segment ell: (p-hat, p'-hat).
struct Segment {
  int ell = 0;
  long p_hat = 0, pp_hat = 0;
  long xi_lo = 0, xi_t_lo = 0;
};
Segment segment(const ModelData& M, int ell);

// floor(x p / p') with x possibly negative
inline long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline long fl(const ModelData& M, long x) { return floor_div(x * M.p, M.pp); }

}  // namespace vir
