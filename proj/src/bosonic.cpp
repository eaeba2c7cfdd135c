#include "virasoro/bosonic.hpp"

#include <cstdlib>
#include <string>

namespace vir {

namespace {

void check_rs(const ModelData& M, int r, int s, int N) {
  if (r < 1 || r >= M.p || s < 1 || s >= M.pp)
    throw OutOfRange("need 1 <= r < p and 1 <= s < p' (got r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")");
  if (N < 1) throw OutOfRange("order must be positive");
}

void add_at(std::vector<Coeff>& v, long e, int sign) {
  if (e < 0 || e >= static_cast<long>(v.size())) return;
  if (sign > 0)
    v[static_cast<std::size_t>(e)] += 1;
  else
    v[static_cast<std::size_t>(e)] -= 1;
}

QSeries from_vector(std::vector<Coeff> v) {
  QSeries out(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out[static_cast<int>(i)] = std::move(v[i]);
  return out;
}

}  // namespace

QSeries character_bosonic(const ModelData& M, int r, int s, int N) {
  check_rs(M, r, s, N);
  const long p = M.p, pp = M.pp;
  std::vector<Coeff> v(static_cast<std::size_t>(N));
  // both exponents are at least p p' (|lambda|-1)^2
  for (long lam = 0; p * pp * (lam - 1) * (lam - 1) < N || lam <= 1; ++lam) {
    for (int side = 0; side < (lam == 0 ? 1 : 2); ++side) {
      const long l = side == 0 ? lam : -lam;
      add_at(v, l * l * p * pp + l * (pp * r - p * s), +1);
      add_at(v, (l * p + r) * (l * pp + s), -1);
    }
  }
  for (int k = 1; k < N; ++k) divide_one_minus_qk(v, k);
  return from_vector(std::move(v));
}

int limit_r_of(int b, int c, const ModelData& M) {
  if (c < 0 || c > M.pp || b < 1 || b >= M.pp || std::abs(b - c) != 1)
    throw OutOfRange("need 1 <= b < p', 0 <= c <= p', |b-c| = 1");
  if (c == 0) return M.wide() ? 1 : 0;
  if (c == M.pp) return M.wide() ? M.p - 1 : M.p;
  return static_cast<int>(fl(M, c)) + (b - c + 1) / 2;
}

QPoly finitized_bosonic(const ModelData& M, int a, int b, int c, int L) {
  if (a < 1 || a >= M.pp) throw OutOfRange("need 1 <= a < p'");
  if (L < 0) throw OutOfRange("need L >= 0");
  const long r = limit_r_of(b, c, M);
  if ((L + a - b) % 2 != 0) throw ParityMismatch("L + a - b must be even");
  const long p = M.p, pp = M.pp;
  const long half_plus = (L + a - b) / 2, half_minus = (L - a - b) / 2;
  QPoly out;
  const long window = L / pp + 2;
  for (long lam = -window; lam <= window; ++lam) {
    long B1 = half_plus - pp * lam;
    if (B1 >= 0 && B1 <= L)
      out += QPoly::from_dense(gaussian_dense(L, static_cast<int>(B1)), 4 * (lam * lam * p * pp + lam * (pp * r - p * a)));
    long B2 = half_minus - pp * lam;
    if (B2 >= 0 && B2 <= L)
      out -= QPoly::from_dense(gaussian_dense(L, static_cast<int>(B2)), 4 * ((lam * p + r) * (lam * pp + a)));
  }
  return finalize_integral(std::move(out));
}

namespace {

struct ProductCase {
  long modulus1 = 0, rs = 0;       // exclude n = 0, +-rs mod modulus1
  long modulus2 = 0, extra = 0;    // and n = +-extra mod modulus2 (quintuple cases)
};

bool product_case(const ModelData& M, int r, int s, ProductCase& pc) {
  const long p = M.p, pp = M.pp;
  auto try_pair = [&](long rr, long ss) {
    if (p == 2 * rr) {
      pc = {rr * pp, rr * ss, 0, 0};
      return true;
    }
    if (pp == 2 * ss) {
      pc = {ss * p, rr * ss, 0, 0};
      return true;
    }
    if (p == 3 * rr) {
      pc = {2 * rr * pp, rr * ss, 4 * rr * pp, 2 * rr * (pp - ss)};
      return true;
    }
    if (pp == 3 * ss) {
      pc = {2 * ss * p, rr * ss, 4 * ss * p, 2 * ss * (p - rr)};
      return true;
    }
    return false;
  };
  return try_pair(r, s) || try_pair(p - r, pp - s);
}

bool excluded(long n, long mod, long k) {
  long m = n % mod;
  return m == 0 || m == k % mod || m == (mod - k % mod) % mod;
}

}  // namespace

bool has_product_form(const ModelData& M, int r, int s) {
  ProductCase pc;
  return product_case(M, r, s, pc);
}

QSeries character_product(const ModelData& M, int r, int s, int N) {
  check_rs(M, r, s, N);
  ProductCase pc;
  if (!product_case(M, r, s, pc))
    throw NotProductCase("no product form for (" + std::to_string(M.p) + "," + std::to_string(M.pp) + ";" +
                         std::to_string(r) + "," + std::to_string(s) + ")");
  std::vector<Coeff> v(static_cast<std::size_t>(N));
  v[0] = 1;
  for (long n = 1; n < N; ++n) {
    if (excluded(n, pc.modulus1, pc.rs)) continue;
    if (pc.modulus2 != 0) {
      long m = n % pc.modulus2;
      if (m == pc.extra % pc.modulus2 || m == (pc.modulus2 - pc.extra % pc.modulus2) % pc.modulus2) continue;
    }
    divide_one_minus_qk(v, static_cast<int>(n));
  }
  return from_vector(std::move(v));
}

}  // namespace vir
