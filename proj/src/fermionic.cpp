#include "virasoro/fermionic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace vir {

namespace {

template <class V>
auto& el(V& v, long i) {
  return v[static_cast<std::size_t>(i)];
}

bool is_tk(const ModelData& M, int j) {
  for (int k = 1; k <= M.n; ++k)
    if (M.t_(k) == j) return true;
  return false;
}

IndexedMatrix block(const ModelData& M, int row_lo, int row_hi, int col_lo, int col_hi, bool (*keep)(int, int)) {
  IndexedMatrix X;
  X.row_lo = row_lo;
  X.col_lo = col_lo;
  X.rows = std::max(0, row_hi - row_lo + 1);
  X.cols = std::max(0, col_hi - col_lo + 1);
  X.data.assign(static_cast<std::size_t>(X.rows * X.cols), 0);
  for (int j = row_lo; j <= row_hi; ++j)
    for (int i = col_lo; i <= col_hi; ++i) X(j, i) = keep(j, i) ? cartan_entry(M, j, i) : 0;
  return X;
}

long ceil_half(long x) { return floor_div(x + 1, 2); }

// 1/(q)_n to order N, cached per thread
const std::vector<Coeff>& inv_poch(int n, int N) {
  thread_local std::map<std::pair<int, int>, std::vector<Coeff>> cache;
  int key_n = std::min(n, N - 1);
  auto key = std::make_pair(key_n, N);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  return cache.emplace(key, pochhammer_inverse(key_n, N).coeffs()).first->second;
}

}  // namespace

int cartan_entry(const ModelData& M, int j, int i) {
  if (std::abs(i - j) > 1) return 0;
  if (is_tk(M, j)) return i == j - 1 ? -1 : 1;
  return i == j ? 2 : -1;
}

FermMatrices ferm_matrices(const ModelData& M) {
  int t = M.t, t1 = M.t1();
  auto all = [](int, int) { return true; };
  FermMatrices F;
  F.C = block(M, 0, t - 1, 0, t - 1, all);
  F.C_star = block(M, 1, t, 0, t - 1, all);
  F.C_bar = block(M, t1 + 1, t - 1, t1 + 1, t - 1, all);
  F.C_bar_star = block(M, t1 + 2, t, t1 + 1, t - 1, all);
  F.B.row_lo = F.B.col_lo = 1;
  F.B.rows = F.B.cols = std::max(t1, 0);
  F.B.data.assign(static_cast<std::size_t>(F.B.rows * F.B.cols), 0);
  for (int j = 1; j <= t1; ++j)
    for (int i = 1; i <= t1; ++i) F.B(j, i) = std::min(i, j);
  return F;
}

std::vector<long> solve_c_star(const ModelData& M, const std::vector<long>& v) {
  int t = M.t;
  std::vector<long> x(static_cast<std::size_t>(t + 2), 0);
  for (int j = t; j >= 1; --j)
    el(x, j - 1) = cartan_entry(M, j, j) * (j < t ? el(x, j) : 0) +
                   cartan_entry(M, j, j + 1) * (j + 1 < t ? el(x, j + 1) : 0) - el(v, j);
  x.resize(static_cast<std::size_t>(std::max(t, 0)));
  return x;
}

Parity2 parity_vectors(const ModelData& M, const TVec& u) {
  std::vector<long> v(u.begin(), u.end());
  auto x = solve_c_star(M, v);
  Parity2 P;
  for (long xi : x) P.Q.push_back(static_cast<int>(((xi % 2) + 2) % 2));
  for (int i = M.t1() + 1; i < M.t; ++i) P.Q_bar.push_back(P.Q[static_cast<std::size_t>(i)]);
  return P;
}

GammaResult gamma(const ModelData& M, const Run& left, const Run& right, const GammaContext& ctx) {
  int t = M.t;
  TVec DL = delta_of_run(M, left), DR = delta_of_run(M, right);
  GammaResult g;
  g.alpha.assign(static_cast<std::size_t>(t + 1), 0);
  g.beta = g.gammas = g.alpha;
  g.alpha2.assign(static_cast<std::size_t>(t), 0);
  g.beta1 = g.alpha2;
  for (int j = t; j >= 1; --j) {
    long b1 = el(g.beta, j) + el(DL, j) - el(DR, j);
    long g1 = el(g.gammas, j) + 2 * el(g.alpha, j) * el(DR, j);
    long a2 = el(g.alpha, j) + b1;
    long g2 = g1 - b1 * b1;
    el(g.alpha2, j - 1) = a2;
    el(g.beta1, j - 1) = b1;
    el(g.alpha, j - 1) = a2;
    if (is_tk(M, j - 1)) {
      el(g.beta, j - 1) = el(g.alpha, j);
      el(g.gammas, j - 1) = -a2 * a2 - g2;
    } else {
      el(g.beta, j - 1) = b1;
      el(g.gammas, j - 1) = g2;
    }
  }
  g.gamma0 = g.gammas[0];
  g.gamma = g.gamma0;
  g.gamma_prime = {g.gamma0, 0};

  if (right.sigma_last() != 0) return g;
  int D = right.delta_last();
  auto need_b = [&]() {
    if (!ctx.b) throw MissingContext("gamma needs b when sigma^R = 0");
    return *ctx.b;
  };
  int b = need_b();
  bool same_up = b == M.pp - 1 || fl(M, b + 1) == fl(M, b);
  bool same_down = b == 1 || fl(M, b - 1) == fl(M, b);
  int sign = 0, lsign = 0;
  if (M.wide()) {
    if (D == 1 && same_up) sign = -1, lsign = -1;
    if (D == -1 && same_down) sign = 1, lsign = -1;
  } else {
    bool split_up = b == M.pp - 1 || fl(M, b + 1) != fl(M, b);
    bool split_down = b == 1 || fl(M, b - 1) != fl(M, b);
    if (D == 1 && split_up) sign = 1, lsign = 1;
    if (D == -1 && split_down) sign = -1, lsign = 1;
  }
  if (sign == 0) return g;
  if (!ctx.a) throw MissingContext("gamma needs a when a sigma = 0 case applies");
  g.special = true;
  g.gamma = g.gamma0 + 2L * sign * (*ctx.a - b);
  g.gamma_prime = {g.gamma, 2L * lsign};
  return g;
}

std::vector<MnSolution> mn_solutions(const ModelData& M, const TVec& u, long L) {
  std::vector<MnSolution> out;
  int t = M.t;
  if (L < 0 || t < 1) return out;
  long twice = L;
  for (int i = 1; i <= t; ++i) twice += el(M.l, i) * el(u, i);
  if (twice % 2 != 0 || twice < 0) return out;
  long S = twice / 2;

  std::vector<long> n(static_cast<std::size_t>(t + 2), 0);
  std::function<void(int, long)> rec = [&](int i, long R) {
    if (i == 0) {
      if (R != 0) return;
      std::vector<long> v(static_cast<std::size_t>(t + 2), 0);
      for (int j = 1; j <= t; ++j) el(v, j) = el(u, j) - 2 * el(n, j);
      auto m = solve_c_star(M, v);
      for (int j = 1; j < t; ++j)
        if (el(m, j) < 0) return;
      if (m[0] != L) throw OutOfRange("mn-system inconsistent with the particle constraint");
      out.push_back({std::vector<long>(n.begin(), n.begin() + t + 1), m});
      return;
    }
    long li = el(M.l, i);
    long lo = i == t ? ceil_half(el(u, t)) : 0;
    if (i == 1) {
      if (R % li == 0 && R / li >= lo) {
        el(n, 1) = R / li;
        rec(0, 0);
      }
      return;
    }
    for (long v = lo; v * li <= R || v < 0; ++v) {
      el(n, i) = v;
      rec(i - 1, R - v * li);
    }
  };
  rec(t, S);
  return out;
}

QPoly F_finite_raw(const ModelData& M, const UVector& left, const UVector& right, long L, const FormContext& ctx) {
  QPoly total;
  if (L < 0) return total;
  int t = M.t;
  TVec u = left.u;
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += right.u[i];
  GammaResult g = gamma(M, left.run, right.run, GammaContext{ctx.a, ctx.b});
  long gp = g.gamma_prime.at(L);
  if (t == 1) {
    // the sum is omitted: m_hat = (L)
    long twice_n = L + el(u, 1);
    if (twice_n < 0 || twice_n % 2 != 0) return total;
    Quarter e = static_cast<Quarter>(cartan_entry(M, 0, 0)) * L * L - L * L + gp;
    total.add_term(e, 1);
    return total;
  }
  FlatSharp fl_l = flat_sharp(M, left.u), fl_r = flat_sharp(M, right.u);
  for (const auto& s : mn_solutions(M, u, L)) {
    const auto& m = s.m_hat;
    Quarter e = -L * L + gp;
    for (int j = 0; j < t; ++j)
      for (int i = std::max(0, j - 1); i <= std::min(t - 1, j + 1); ++i) e += el(m, j) * cartan_entry(M, j, i) * el(m, i);
    for (int j = 1; j < t; ++j) e -= 2 * (el(fl_l.flat, j) + el(fl_r.sharp, j)) * el(m, j);
    std::vector<Coeff> acc(1, Coeff(1));
    std::size_t deg = 0;
    for (int j = 1; j < t; ++j) {
      const auto& gb = gaussian_dense(static_cast<int>(el(m, j) + el(s.n, j)), static_cast<int>(el(m, j)));
      if (gb.empty()) {
        acc.clear();
        break;
      }
      deg += gb.size() - 1;
      mul_dense(acc, gb, deg + 1);
    }
    if (acc.empty()) continue;
    total += QPoly::from_dense(acc, e);
  }
  return total;
}

QPoly F_finite(const ModelData& M, const UVector& left, const UVector& right, long L, const FormContext& ctx) {
  return finalize_integral(F_finite_raw(M, left, right, L, ctx));
}

QPoly F_tilde(const ModelData& M, const UVector& left, const UVector& u, long L, const FormContext& ctx) {
  const Run& run = u.run;
  int sigma = run.sigma_last();
  int D = run.delta_last();
  int tau = tau_of(M, run);
  long dab = static_cast<long>(D) * (ctx.a - ctx.b);
  auto F = [&](const Run& r, long LL) { return F_finite_raw(M, left, with_run(M, u, r), LL, ctx); };
  QPoly qL = QPoly::monomial(4 * L);
  QPoly one = QPoly::constant(1);
  if (sigma >= tau) throw OutOfRange("sigma_d >= tau in F-tilde");
  if (M.wide()) {
    if (sigma == 0) return F(run, L).shifted(2 * (L + dab));
    if (sigma < tau - 1) return (F(run_plus(M, run), L + 1) - F(run_plusplus(M, run), L)).shifted(-2 * (L - dab));
    return (F(run, L) + (qL - one) * F(run_plus(M, run), L - 1)).shifted(-2 * (L - dab));
  }
  if (sigma == 0) return F(run, L).shifted(-2 * (L + dab));
  if (sigma < tau - 1) return F(run_plus(M, run), L + 1) - F(run_plusplus(M, run), L).shifted(2 * (L + 2 + dab));
  return F(run, L).shifted(2 * (L - dab)) + (one - qL) * F(run_plus(M, run), L - 1);
}

bool in_u_bar(const ModelData& M, int b, const UVector& u) {
  if (u.sigma_last() != 0) return false;
  int bd = b + u.delta_last();
  if (bd > 0 && bd < M.pp) return fl(M, b) != fl(M, bd);
  return !M.wide();
}

namespace {

// Exact enumeration of the lattice points of a positive-definite quadratic
// below a bound, by successive minima over an LDL^T factorisation.
struct Quadratic {
  int D = 0;
  std::vector<long double> A;  // D x D symmetric, quarter units
  std::vector<long double> b;
  long double c = 0;
};

// `admissible(i, x)` may veto a partial assignment once x_i..x_{D-1} are fixed.
void enumerate_below(const Quadratic& Qf, long double bound, const std::vector<int>& parity,
                     const std::function<bool(int, const std::vector<long>&)>& admissible,
                     const std::function<void(const std::vector<long>&)>& visit) {
  int D = Qf.D;
  if (D == 0) {
    visit({});
    return;
  }
  auto A = [&](int i, int j) { return Qf.A[static_cast<std::size_t>(i * D + j)]; };
  std::vector<long double> q(static_cast<std::size_t>(D * D), 0);
  auto Q = [&](int i, int j) -> long double& { return q[static_cast<std::size_t>(i * D + j)]; };
  for (int i = 0; i < D; ++i) {
    long double d = A(i, i);
    for (int k = 0; k < i; ++k) d -= Q(k, k) * Q(k, i) * Q(k, i);
    if (!(d > 1e-12L)) throw UnstableTruncation("quadratic form is not positive definite");
    Q(i, i) = d;
    for (int j = i + 1; j < D; ++j) {
      long double s = A(i, j);
      for (int k = 0; k < i; ++k) s -= Q(k, k) * Q(k, i) * Q(k, j);
      Q(i, j) = s / d;
    }
  }
  // centre x* = -A^{-1} b / 2 via the factorisation
  std::vector<long double> y(static_cast<std::size_t>(D));
  for (int i = 0; i < D; ++i) {
    long double s = -Qf.b[static_cast<std::size_t>(i)] / 2;
    for (int k = 0; k < i; ++k) s -= Q(k, i) * y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(i)] = s;
  }
  std::vector<long double> xs(static_cast<std::size_t>(D));
  for (int i = D - 1; i >= 0; --i) {
    long double s = y[static_cast<std::size_t>(i)] / Q(i, i);
    for (int j = i + 1; j < D; ++j) s -= Q(i, j) * xs[static_cast<std::size_t>(j)];
    xs[static_cast<std::size_t>(i)] = s;
  }
  long double emin = Qf.c;
  for (int i = 0; i < D; ++i) emin += Qf.b[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)] / 2;
  long double R = bound - emin;
  if (R < 0) return;
  R += 1e-6L * (1 + std::fabs(static_cast<double>(R)));

  std::vector<long> x(static_cast<std::size_t>(D));
  std::function<void(int, long double)> rec = [&](int i, long double rem) {
    long double centre = xs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < D; ++j) centre -= Q(i, j) * (x[static_cast<std::size_t>(j)] - xs[static_cast<std::size_t>(j)]);
    long double w = std::sqrt(std::max(rem, 0.0L) / Q(i, i));
    long lo = static_cast<long>(std::ceil(centre - w - 1e-9L));
    long hi = static_cast<long>(std::floor(centre + w + 1e-9L));
    lo = std::max(lo, 0L);
    int par = parity[static_cast<std::size_t>(i)];
    for (long v = lo; v <= hi; ++v) {
      if (par >= 0 && ((v % 2) != par)) continue;
      long double dv = v - centre;
      long double r2 = rem - Q(i, i) * dv * dv;
      if (r2 < -1e-9L) continue;
      x[static_cast<std::size_t>(i)] = v;
      if (!admissible(i, x)) continue;
      if (i == 0) visit(x);
      else rec(i - 1, r2);
    }
  };
  rec(D - 1, R);
}

QSeries infinite_form(const ModelData& M, const UVector& left, const UVector& right, int N, long gamma_q,
                      const std::vector<long>& Nvec) {
  int t = M.t, t1 = M.t1();
  int nm = std::max(0, t - 1 - t1);  // m_{t1+1}..m_{t-1}
  int D = t1 + nm;
  TVec u = left.u;
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += right.u[i];
  Parity2 P = parity_vectors(M, u);
  FlatSharp fl_l = flat_sharp(M, left.u), fl_r = flat_sharp(M, right.u);
  auto mi = [&](int j) { return t1 + (j - t1 - 1); };  // slot of m_j

  // nu = 2 n~ = Pm x + v0 on indices 1..t1
  auto nu_of = [&](const std::vector<long>& x, int j) {
    long v = 2 * x[static_cast<std::size_t>(j - 1)] - el(u, j);
    if (j == t1 && nm > 0) v += x[static_cast<std::size_t>(mi(t1 + 1))];
    return v;
  };
  auto mval = [&](const std::vector<long>& x, int j) -> long {
    if (j <= t1 || j >= t) return 0;
    return x[static_cast<std::size_t>(mi(j))];
  };
  auto exact = [&](const std::vector<long>& x) {
    long e = gamma_q;
    for (int j = 1; j <= t1; ++j) {
      long nj = nu_of(x, j);
      for (int i = 1; i <= t1; ++i) e += nj * std::min(i, j) * nu_of(x, i);
      e -= 2 * el(Nvec, j) * nj;
    }
    for (int j = t1 + 1; j < t; ++j) {
      for (int i = std::max(t1 + 1, j - 1); i <= std::min(t - 1, j + 1); ++i)
        e += mval(x, j) * cartan_entry(M, j, i) * mval(x, i);
      e -= 2 * (el(fl_l.flat, j) + el(fl_r.sharp, j)) * mval(x, j);
    }
    return e;
  };

  // assemble the real quadratic by polarisation of the exact form
  Quadratic Qf;
  Qf.D = D;
  Qf.A.assign(static_cast<std::size_t>(D * D), 0);
  Qf.b.assign(static_cast<std::size_t>(D), 0);
  std::vector<long> z(static_cast<std::size_t>(D), 0);
  long e0 = exact(z);
  Qf.c = e0;
  std::vector<long> ei(static_cast<std::size_t>(D), 0);
  std::vector<long> diag(static_cast<std::size_t>(D));
  for (int i = 0; i < D; ++i) {
    ei.assign(static_cast<std::size_t>(D), 0);
    ei[static_cast<std::size_t>(i)] = 1;
    long ep = exact(ei);
    ei[static_cast<std::size_t>(i)] = -1;
    long em = exact(ei);
    Qf.A[static_cast<std::size_t>(i * D + i)] = (ep + em - 2 * e0) / 2.0L;
    Qf.b[static_cast<std::size_t>(i)] = (ep - em) / 2.0L;
    diag[static_cast<std::size_t>(i)] = ep;
  }
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j) {
      ei.assign(static_cast<std::size_t>(D), 0);
      ei[static_cast<std::size_t>(i)] = ei[static_cast<std::size_t>(j)] = 1;
      long eij = exact(ei);
      long double a = (eij - diag[static_cast<std::size_t>(i)] - diag[static_cast<std::size_t>(j)] + e0) / 2.0L;
      Qf.A[static_cast<std::size_t>(i * D + j)] = Qf.A[static_cast<std::size_t>(j * D + i)] = a;
    }

  std::vector<int> parity(static_cast<std::size_t>(D), -1);
  for (int j = t1 + 1; j < t; ++j) parity[static_cast<std::size_t>(mi(j))] = P.at(j);

  // top of the binomial at row j, doubled
  auto twice_top = [&](const std::vector<long>& x, int j) {
    long row = 0;
    for (int i = std::max(t1 + 1, j - 1); i <= std::min(t - 1, j + 1); ++i) row += cartan_entry(M, j, i) * mval(x, i);
    return 2 * mval(x, j) - row + el(u, j);
  };
  // binomial j is settled once m_{j-1} is fixed
  auto admissible = [&](int i, const std::vector<long>& x) {
    if (i < t1) return true;
    int j = i + 2;  // slot i holds m_{i+1} = m_{j-1}
    if (j > t - 1) return true;
    long tt = twice_top(x, j);
    return tt >= 2 * mval(x, j);
  };

  std::vector<Coeff> sum(static_cast<std::size_t>(N), Coeff(0));
  enumerate_below(Qf, 4.0L * N, parity, admissible, [&](const std::vector<long>& x) {
    long e4 = exact(x);
    if (e4 >= 4L * N) return;
    if (e4 % 4 != 0) throw FractionalExponent("infinite form term with exponent " + std::to_string(e4) + "/4");
    long e = e4 / 4;
    std::size_t order = static_cast<std::size_t>(N - std::max(e, 0L));
    std::vector<Coeff> acc(1, Coeff(1));
    for (int j = 1; j <= t1; ++j) mul_dense(acc, inv_poch(static_cast<int>(x[static_cast<std::size_t>(j - 1)]), N), order);
    if (nm > 0) mul_dense(acc, inv_poch(static_cast<int>(mval(x, t1 + 1)), N), order);
    for (int j = t1 + 2; j < t; ++j) {
      long tt = twice_top(x, j);
      if (tt % 2 != 0) throw NonIntegralArgument("binomial top is not an integer");
      const auto& gb = gaussian_dense(static_cast<int>(tt / 2), static_cast<int>(mval(x, j)));
      if (gb.empty()) return;
      mul_dense(acc, gb, order);
    }
    if (e < 0) throw OutOfRange("nonvanishing term with negative exponent in infinite form");
    for (std::size_t k = 0; k < acc.size() && k < order; ++k) sum[static_cast<std::size_t>(e) + k] += acc[k];
  });
  QSeries out(N);
  for (int i = 0; i < N; ++i) out[i] = sum[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace

QSeries F_infinite(const ModelData& M, const UVector& left, const UVector& right, int N, const GammaContext& ctx) {
  GammaResult g = gamma(M, left.run, right.run, ctx);
  return infinite_form(M, left, right, N, g.gamma, std::vector<long>(static_cast<std::size_t>(M.t1() + 1), 0));
}

QSeries F_star(const ModelData& M, const UVector& left, const UVector& right, int N, const GammaContext& ctx) {
  GammaResult g = gamma(M, left.run, right.run, ctx);
  int t1 = M.t1();
  int sd = right.sigma_last();
  int td = right.run.tau.back();
  std::vector<long> Nv(static_cast<std::size_t>(t1 + 1), 0);
  for (int i = 1; i <= t1; ++i) el(Nv, i) = i <= sd ? 0 : i <= td ? i - sd : td - sd;
  return infinite_form(M, left, right, N, g.gamma, Nv);
}

std::vector<std::pair<int, int>> FermExpr::chain() const {
  std::vector<std::pair<int, int>> c{{p, pp}};
  if (!extra.empty())
    for (auto x : extra.front().chain()) c.push_back(x);
  return c;
}

CharacterResult character_fermionic(const ModelData& M, int r, int s, int N, const TreeConfig& cfg) {
  if (M.p < 2 || r < 1 || r >= M.p || s < 1 || s >= M.pp)
    throw OutOfRange("character (" + std::to_string(r) + "," + std::to_string(s) + ") outside the model");
  CharacterResult res{QSeries(N), FermExpr{M.p, M.pp, {r, s}, {}, {}}};
  if (M.p == 2 && M.pp == 3) {
    res.series = QSeries::one(N);
    return res;
  }
  // The sigma~_1 = t_1 variant only changes the recorded run; summands are evaluated on the standard one.
  TreeConfig plain = cfg;
  plain.sigma_tilde_t1 = false;
  auto right = u_tilde_set(M, r, plain);
  auto shown = u_tilde_set(M, r, cfg);
  for (const auto& uL : u_set(M, s, cfg))
    for (std::size_t j = 0; j < right.size(); ++j) {
      res.series += F_infinite(M, uL, right[j], N);
      res.expr.terms.push_back({uL, shown[j], TermKind::F, gamma(M, uL.run, right[j].run), s, r, std::nullopt});
    }
  int es = eta(M, s);
  Segment seg = segment(M, es);
  long sh = s - seg.xi_lo, rh = r - seg.xi_t_lo;
  if (es == eta_tilde(M, r) && sh != 0 && rh != 0) {
    ModelData Mh = build_model(static_cast<int>(seg.p_hat), static_cast<int>(seg.pp_hat));
    auto sub = character_fermionic(Mh, static_cast<int>(rh), static_cast<int>(sh), N, cfg);
    res.series += sub.series;
    res.expr.extra.push_back(std::move(sub.expr));
  }
  return res;
}

FinitizedResult finitized_fermionic(const ModelData& M, int a, int b, int c, long L, const TreeConfig& cfg) {
  if (a < 1 || a >= M.pp || b < 1 || b >= M.pp || (c != b - 1 && c != b + 1) || L < 0)
    throw OutOfRange("finitized character (" + std::to_string(a) + "," + std::to_string(b) + "," +
                     std::to_string(c) + ") at L=" + std::to_string(L));
  if ((L - a + b) % 2 != 0) throw ParityMismatch("L must have the parity of a - b");
  FinitizedResult res{QPoly(), FermExpr{M.p, M.pp, {a, b, c, static_cast<int>(L)}, {}, {}}};
  if (M.p == 1 && M.pp == 2) {
    if (L == 0) res.poly = finalize_integral(QPoly::constant(1));
    else res.poly = finalize_integral(QPoly());
    return res;
  }
  FormContext ctx{a, b};
  QPoly total;
  auto left_set = u_set(M, a, cfg);
  auto right_set = u_set(M, b, cfg);
  bool interfacial = is_interfacial(M, b);
  for (const auto& uL : left_set)
    for (const auto& uR : right_set) {
      bool plain = interfacial || uR.delta_last() == c - b;
      GammaResult g = gamma(M, uL.run, uR.run, GammaContext{a, b});
      if (plain) total += F_finite_raw(M, uL, uR, L, ctx);
      else total += F_tilde(M, uL, uR, L, ctx);
      res.expr.terms.push_back({uL, uR, plain ? TermKind::F : TermKind::F_tilde, g, a, b, L});
    }
  int ea = eta(M, a);
  Segment seg = segment(M, ea);
  long ah = a - seg.xi_lo, bh = b - seg.xi_lo;
  if (ea == eta(M, b) && ah != 0 && bh != 0) {
    bool band_split = fl(M, b + 1) == fl(M, b - 1) + 1;
    long ch;
    long xi_hi = M.xi[static_cast<std::size_t>(ea + 1)];
    if (c == seg.xi_lo && c > 0 && band_split) ch = 2;
    else if (c == xi_hi && c < M.pp && band_split) ch = seg.pp_hat - 2;
    else ch = c - seg.xi_lo;
    ModelData Mh = build_model(static_cast<int>(seg.p_hat), static_cast<int>(seg.pp_hat));
    auto sub = finitized_fermionic(Mh, static_cast<int>(ah), static_cast<int>(bh), static_cast<int>(ch), L, cfg);
    total += sub.poly;
    res.expr.extra.push_back(std::move(sub.expr));
  }
  res.poly = finalize_integral(total);
  return res;
}

std::string expr_to_string(const FermExpr& e) {
  std::ostringstream os;
  std::function<void(const FermExpr&, int)> put = [&](const FermExpr& x, int depth) {
    std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    os << pad << "model " << x.p << "/" << x.pp << " labels";
    for (int v : x.labels) os << " " << v;
    os << " terms " << x.terms.size() << "\n";
    for (const auto& term : x.terms) {
      os << pad << "  " << (term.kind == TermKind::F ? "F " : "Ft ") << run_to_string(term.left.run) << " "
         << run_to_string(term.right.run) << " gamma " << term.gamma.gamma;
      if (term.gamma.gamma_prime.l != 0)
        os << " gamma' " << term.gamma.gamma_prime.c << (term.gamma.gamma_prime.l > 0 ? "+" : "") << term.gamma.gamma_prime.l
           << "L";
      os << "\n";
    }
    for (const auto& sub : x.extra) put(sub, depth + 1);
  };
  put(e, 0);
  return os.str();
}

}  // namespace vir
