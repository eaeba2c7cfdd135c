#include "virasoro/cfmodel.hpp"

#include <numeric>
#include <string>

namespace vir {

std::vector<int> continued_fraction(long num, long den) {
  std::vector<int> cf;
  while (den != 0) {
    cf.push_back(static_cast<int>(num / den));
    long r = num % den;
    num = den;
    den = r;
  }
  if (cf.size() > 1 && cf.back() == 1) {
    cf.pop_back();
    ++cf.back();
  }
  return cf;
}

ModelData build_model(int p, int pp) {
  if (p < 1 || pp <= p) throw OutOfRange("need 1 <= p < p'");
  if (std::gcd(p, pp) != 1) throw NotCoprime(std::to_string(p) + " and " + std::to_string(pp) + " share a factor");
  ModelData M;
  M.p = p;
  M.pp = pp;
  M.cf = continued_fraction(pp, p);
  M.n = static_cast<int>(M.cf.size()) - 1;
  M.tk.assign(static_cast<std::size_t>(M.n + 2), -1);
  for (int k = 1; k <= M.n + 1; ++k) M.tk[static_cast<std::size_t>(k)] = M.tk[static_cast<std::size_t>(k - 1)] + M.cf[static_cast<std::size_t>(k - 1)];
  M.t = M.tk[static_cast<std::size_t>(M.n + 1)] - 1;

  M.y.assign(static_cast<std::size_t>(M.n + 3), 0);
  M.z.assign(static_cast<std::size_t>(M.n + 3), 0);
  M.y[0] = 0, M.y[1] = 1;
  M.z[0] = 1, M.z[1] = 0;
  for (int k = 1; k <= M.n + 1; ++k) {
    auto i = static_cast<std::size_t>(k + 1);
    M.y[i] = M.cf[static_cast<std::size_t>(k - 1)] * M.y[i - 1] + M.y[i - 2];
    M.z[i] = M.cf[static_cast<std::size_t>(k - 1)] * M.z[i - 1] + M.z[i - 2];
  }

  auto T = static_cast<std::size_t>(M.t + 1);
  M.kappa.assign(T, 0);
  M.kappa_t.assign(T, 0);
  M.l.assign(T, 0);
  for (int j = 0; j <= M.t; ++j) {
    int k = zeta(M, j);
    long off = j - M.t_(k);
    M.kappa[static_cast<std::size_t>(j)] = M.Y(k - 1) + off * M.Y(k);
    M.kappa_t[static_cast<std::size_t>(j)] = M.Z(k - 1) + off * M.Z(k);
    if (j >= 1) M.l[static_cast<std::size_t>(j)] = M.Y(k - 1) + (off - 1) * M.Y(k);
  }

  int cn = M.cf.back();
  M.xi.assign(static_cast<std::size_t>(2 * cn), 0);
  M.xi_t.assign(static_cast<std::size_t>(2 * cn), 0);
  for (int k = 1; k < cn; ++k) {
    M.xi[static_cast<std::size_t>(2 * k - 1)] = k * M.Y(M.n);
    M.xi[static_cast<std::size_t>(2 * k)] = k * M.Y(M.n) + M.Y(M.n - 1);
    M.xi_t[static_cast<std::size_t>(2 * k - 1)] = k * M.Z(M.n);
    M.xi_t[static_cast<std::size_t>(2 * k)] = k * M.Z(M.n) + M.Z(M.n - 1);
  }
  M.xi.back() = pp;
  M.xi_t.back() = p;
  return M;
}

int zeta(const ModelData& M, int j) {
  if (j < 0 || j > M.t_(M.n + 1)) throw OutOfRange("zone index " + std::to_string(j));
  for (int k = 0; k <= M.n; ++k)
    if (M.t_(k) < j && j <= M.t_(k + 1)) return k;
  throw OutOfRange("zone index " + std::to_string(j));
}

Parity band_parity(const ModelData& M, int h) {
  if (h < 0 || h > M.pp - 1) throw OutOfRange("band " + std::to_string(h));
  if (h == 0 || h == M.pp - 1) return M.wide() ? Parity::even : Parity::odd;
  return fl(M, h) != fl(M, h + 1) ? Parity::odd : Parity::even;
}

bool is_interfacial(const ModelData& M, int a) {
  if (a < 0 || a > M.pp) throw OutOfRange("height " + std::to_string(a));
  if (a == 0 || a == M.pp) return true;
  if (a < 2 || a > M.pp - 2) return false;
  return fl(M, a + 1) == fl(M, a - 1) + 1;
}

bool is_multifacial(const ModelData& M, int a) {
  if (a < 0 || a > M.pp) throw OutOfRange("height " + std::to_string(a));
  if (a == 1 || a == M.pp - 1) return !M.wide();
  if (a < 2 || a > M.pp - 2) return false;
  return fl(M, a + 1) == fl(M, a - 1) + 2;
}

int rho(const ModelData& M, int a) {
  if (a < 0 || a > M.pp) throw OutOfRange("height " + std::to_string(a));
  if (a == 0) return 0;
  if (a == M.pp) return M.p;
  return static_cast<int>(fl(M, a + 1));
}

Omega omega(const ModelData& M, int a) {
  if (!is_interfacial(M, a)) return {};
  int r = rho(M, a);
  long base = floor_div(static_cast<long>(M.pp) * r, M.p);
  if (a == base) return {r, -1};
  if (a == base + 1) return {r, +1};
  return {};
}

int delta_ae(const ModelData& M, int a, int e) {
  int step = e % 2 == 0 ? 1 : -1;
  return fl(M, a + step) != fl(M, a) ? 1 : 0;
}

int eta(const ModelData& M, int s) {
  if (s < 1 || s >= M.pp) throw OutOfRange("s=" + std::to_string(s));
  for (std::size_t i = 0; i + 1 < M.xi.size(); ++i)
    if (M.xi[i] <= s && s < M.xi[i + 1]) return static_cast<int>(i);
  throw OutOfRange("s=" + std::to_string(s));
}

int eta_tilde(const ModelData& M, int r) {
  if (r < 1 || r >= M.p) throw OutOfRange("r=" + std::to_string(r));
  for (std::size_t i = 0; i + 1 < M.xi_t.size(); ++i)
    if (M.xi_t[i] <= r && r < M.xi_t[i + 1]) return static_cast<int>(i);
  throw OutOfRange("r=" + std::to_string(r));
}

std::vector<int> takahashi_decompose(const ModelData& M, long s) {
  std::vector<int> out;
  while (s > 0) {
    int mu = 0;
    for (int j = 0; j <= M.t; ++j)
      if (M.kappa[static_cast<std::size_t>(j)] <= s) mu = j;
    out.push_back(mu);
    s -= M.kappa[static_cast<std::size_t>(mu)];
  }
  return {out.rbegin(), out.rend()};
}

std::vector<int> truncated_decompose(const ModelData& M, long r) {
  std::vector<int> out;
  while (r > 0) {
    int mu = -1;
    for (int j = M.t1() + 1; j <= M.t; ++j)
      if (M.kappa_t[static_cast<std::size_t>(j)] <= r) mu = j;
    if (mu < 0) throw OutOfRange("no truncated decomposition");
    out.push_back(mu);
    r -= M.kappa_t[static_cast<std::size_t>(mu)];
  }
  return {out.rbegin(), out.rend()};
}

Segment segment(const ModelData& M, int ell) {
  Segment s;
  s.ell = ell;
  auto i = static_cast<std::size_t>(ell);
  s.pp_hat = M.xi[i + 1] - M.xi[i];
  s.p_hat = M.xi_t[i + 1] - M.xi_t[i];
  s.xi_lo = M.xi[i];
  s.xi_t_lo = M.xi_t[i];
  return s;
}

}  // namespace vir
