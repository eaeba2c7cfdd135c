#include "virasoro/paths.hpp"

#include <cstdlib>
#include <map>
#include <string>

namespace vir {

namespace {

bool odd_band(const ModelData& M, int lo) { return band_parity(M, lo) == Parity::odd; }

// Score of the vertex at i given its neighbours, for vertices with a real band above or below.
long vertex_score(const ModelData& M, int a, int i, int prev, int cur, int next) {
  const bool up = cur > prev;
  const bool peak = (cur - prev) != (next - cur);
  const bool odd = odd_band(M, std::min(cur, next));
  if (peak == odd) return 0;
  const long x = (i - (cur - a)) / 2, y = (i + (cur - a)) / 2;
  return up ? x : y;
}

void check_heights(const ModelData& M, int a, int b, int L) {
  if (a < 1 || a >= M.pp || b < 1 || b >= M.pp) throw OutOfRange("endpoints must lie in [1, p'-1]");
  if (L < 0) throw OutOfRange("need L >= 0");
}

void check_cap(int L, int cap) {
  if (L > cap) throw CapExceeded("path length " + std::to_string(L) + " exceeds cap " + std::to_string(cap));
}

void check_c(const ModelData& M, int b, int c) {
  if (c < 0 || c > M.pp || std::abs(b - c) != 1) throw OutOfRange("need 0 <= c <= p' and |b-c| = 1");
}

QPoly from_counts(const std::map<long, long>& counts) {
  QPoly out;
  for (const auto& [w, n] : counts) out.add_term(4 * w, n);
  return finalize_integral(std::move(out));
}

// Depth-first walk carrying the running weight of vertices 1..i-1.
struct Walker {
  const ModelData& M;
  int a, b, L;
  std::vector<int> h;
  std::function<void(const std::vector<int>&, long)> leaf;  // receives weight of vertices 1..L-1

  void run() {
    h.assign(static_cast<std::size_t>(L + 1), 0);
    h[0] = a;
    step(0, 0);
  }
  void step(int i, long acc) {
    if (i == L) {
      leaf(h, acc);
      return;
    }
    for (int dir : {-1, 1}) {
      int nh = h[static_cast<std::size_t>(i)] + dir;
      if (nh < 1 || nh >= M.pp || std::abs(nh - b) > L - i - 1) continue;
      h[static_cast<std::size_t>(i + 1)] = nh;
      long add = i >= 1 ? vertex_score(M, a, i, h[static_cast<std::size_t>(i - 1)], h[static_cast<std::size_t>(i)], nh) : 0;
      step(i + 1, acc + add);
    }
  }
};

long last_vertex(const ModelData& M, int a, const std::vector<int>& h, int c) {
  const int L = static_cast<int>(h.size()) - 1;
  if (L == 0) return 0;
  return vertex_score(M, a, L, h[static_cast<std::size_t>(L - 1)], h[static_cast<std::size_t>(L)], c);
}

long last_vertex_tilde(int a, const std::vector<int>& h, int f) {
  const int L = static_cast<int>(h.size()) - 1;
  if (L == 0) return 0;
  const int cur = h[static_cast<std::size_t>(L)], prev = h[static_cast<std::size_t>(L - 1)];
  if (cur - prev == 1 && f == 1) return (L - (cur - a)) / 2;
  if (cur - prev == -1 && f == 0) return (L + (cur - a)) / 2;
  return 0;
}

bool reachable(int a, int b, int L) { return ((L + a - b) % 2 + 2) % 2 == 0 && std::abs(b - a) <= L; }

}  // namespace

void for_each_path(const ModelData& M, int a, int b, int L, const std::function<void(const Path&)>& visit) {
  check_heights(M, a, b, L);
  if (!reachable(a, b, L)) return;
  Walker w{M, a, b, L, {}, [&](const std::vector<int>& h, long) { visit(Path{h}); }};
  w.run();
}

std::vector<Path> enumerate_paths(const ModelData& M, int a, int b, int L) {
  std::vector<Path> out;
  for_each_path(M, a, b, L, [&](const Path& h) { out.push_back(h); });
  return out;
}

long weight(const ModelData& M, const Path& h, int c) {
  check_c(M, h.b(), c);
  const int L = h.length();
  long w = 0;
  for (int i = 1; i < L; ++i)
    w += vertex_score(M, h.a(), i, h.h[static_cast<std::size_t>(i - 1)], h.h[static_cast<std::size_t>(i)],
                      h.h[static_cast<std::size_t>(i + 1)]);
  return w + last_vertex(M, h.a(), h.h, c);
}

long weight_tilde(const ModelData& M, const Path& h, int /*e*/, int f) {
  const int L = h.length();
  long w = 0;
  for (int i = 1; i < L; ++i)
    w += vertex_score(M, h.a(), i, h.h[static_cast<std::size_t>(i - 1)], h.h[static_cast<std::size_t>(i)],
                      h.h[static_cast<std::size_t>(i + 1)]);
  return w + last_vertex_tilde(h.a(), h.h, f);
}

long StrikingSequence::m() const {
  if (length == 0) return (e + f) % 2;
  long s = (e + d + pi) % 2;
  for (long x : a) s += x;
  return s;
}

long StrikingSequence::alpha() const {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * w(i);
  return d == 0 ? s : -s;
}

long StrikingSequence::beta() const {
  if (length == 0) return f - e;
  long s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * b[i];
  if (d != 0) s = -s;
  if ((e + d + pi) % 2 != 0) s += e == 0 ? 1 : -1;
  return s;
}

StrikingSequence striking(const ModelData& M, const Path& h, int e, int f) {
  StrikingSequence s;
  s.e = e, s.f = f;
  s.length = h.length();
  const int L = s.length;
  const int h1 = L == 0 ? h.a() + (f == 0 ? 1 : -1) : h.h[1];
  s.d = h1 > h.a() ? 0 : 1;
  s.pi = odd_band(M, std::min(h.a(), h1)) ? 1 : 0;
  for (int i = 1; i <= L; ++i) {
    const int prev = h.h[static_cast<std::size_t>(i - 1)], cur = h.h[static_cast<std::size_t>(i)];
    const bool new_line = i == 1 || (cur - prev) != (prev - h.h[static_cast<std::size_t>(i - 2)]);
    if (new_line) {
      s.a.push_back(0);
      s.b.push_back(0);
    }
    bool scoring;
    if (i < L) {
      const int next = h.h[static_cast<std::size_t>(i + 1)];
      const bool peak = (cur - prev) != (next - cur);
      scoring = peak != odd_band(M, std::min(cur, next));
    } else {
      scoring = cur == prev - (f == 0 ? 1 : -1);  // peak against the post-segment
    }
    (scoring ? s.b : s.a).back() += 1;
  }
  return s;
}

long weight_via_striking(const StrikingSequence& s) {
  long total = 0;
  for (std::size_t i = 0; i < s.a.size(); ++i) {
    long coord = 0;
    // lines i-1, i-3, ... in 0-based indexing
    for (long k = static_cast<long>(i) - 1; k >= 0; k -= 2) coord += s.w(static_cast<std::size_t>(k));
    total += s.b[i] * coord;
  }
  return total;
}

Path path_from_striking(int a, const StrikingSequence& s) {
  Path h{{a}};
  int dir = s.d == 0 ? 1 : -1;
  for (std::size_t i = 0; i < s.a.size(); ++i, dir = -dir)
    for (long k = 0; k < s.w(i); ++k) h.h.push_back(h.h.back() + dir);
  return h;
}

long beta_abef(const ModelData& M, int a, int b, int e, int f) { return fl(M, b) - fl(M, a) + f - e; }

QPoly gen_fn(const ModelData& M, int a, int b, int c, int L, int cap) {
  check_heights(M, a, b, L);
  check_c(M, b, c);
  check_cap(L, cap);
  std::map<long, long> counts;
  if (reachable(a, b, L)) {
    Walker w{M, a, b, L, {}, [&](const std::vector<int>& h, long acc) { ++counts[acc + last_vertex(M, a, h, c)]; }};
    w.run();
  }
  return from_counts(counts);
}

QPoly gen_fn_tilde(const ModelData& M, int a, int b, int e, int f, int L, std::optional<long> m, int cap) {
  check_heights(M, a, b, L);
  check_cap(L, cap);
  std::map<long, long> counts;
  if (reachable(a, b, L)) {
    Walker w{M, a, b, L, {}, [&](const std::vector<int>& h, long acc) {
               if (m && striking(M, Path{h}, e, f).m() != *m) return;
               ++counts[acc + last_vertex_tilde(a, h, f)];
             }};
    w.run();
  }
  return from_counts(counts);
}

std::pair<std::vector<int>, std::vector<int>> mazy_pair(const ModelData& M, const Run& run) {
  const int d = run.d();
  const int tn = M.t_(M.n);
  const int d0 = run.sigma[0] < tn ? 0 : 1;
  const bool plus = run.delta[0] == 1;
  auto kap = [&](int i) { return M.kappa[static_cast<std::size_t>(i)]; };
  std::vector<long> star(static_cast<std::size_t>(d)), plain(static_cast<std::size_t>(d));
  star[0] = plus ? M.pp - kap(tn) : kap(tn);
  plain[0] = plus ? M.pp : 0;
  long acc = plus ? M.pp - kap(run.sigma[0]) : kap(run.sigma[0]);
  for (int j = 1; j < d; ++j) {
    if (j >= 2) acc += run.delta[static_cast<std::size_t>(j - 1)] * (kap(run.tau[static_cast<std::size_t>(j - 1)]) - kap(run.sigma[static_cast<std::size_t>(j - 1)]));
    star[static_cast<std::size_t>(j)] = acc;
    plain[static_cast<std::size_t>(j)] = acc + run.delta[static_cast<std::size_t>(j)] * kap(run.tau[static_cast<std::size_t>(j)]);
  }
  std::vector<int> mu, mu_star;
  for (int j = d0; j < d; ++j) {
    mu.push_back(static_cast<int>(plain[static_cast<std::size_t>(j)]));
    mu_star.push_back(static_cast<int>(star[static_cast<std::size_t>(j)]));
  }
  return {mu, mu_star};
}

MazySpec mazy_from_runs(const ModelData& M, const Run& left, const Run& right) {
  auto [mu, mu_star] = mazy_pair(M, left);
  auto [nu, nu_star] = mazy_pair(M, right);
  return {mu, mu_star, nu, nu_star};
}

bool mazy_compliant(const Path& h, const MazySpec& spec, int pp) {
  std::vector<int> first(static_cast<std::size_t>(pp + 1), -1), last(static_cast<std::size_t>(pp + 1), -1);
  for (int i = 0; i <= h.length(); ++i) {
    auto v = static_cast<std::size_t>(h.h[static_cast<std::size_t>(i)]);
    if (first[v] < 0) first[v] = i;
    last[v] = i;
  }
  auto F = [&](int x) { return first[static_cast<std::size_t>(x)]; };
  auto Lst = [&](int x) { return last[static_cast<std::size_t>(x)]; };
  for (std::size_t j = 0; j < spec.mu.size(); ++j) {
    if (F(spec.mu_star[j]) < 0) return false;
    if (F(spec.mu[j]) >= 0 && F(spec.mu[j]) <= F(spec.mu_star[j])) return false;
  }
  for (std::size_t j = 0; j < spec.nu.size(); ++j) {
    if (Lst(spec.nu_star[j]) < 0) return false;
    if (Lst(spec.nu[j]) >= 0 && Lst(spec.nu[j]) >= Lst(spec.nu_star[j])) return false;
  }
  if (!spec.mu.empty() && !spec.nu.empty() && F(spec.mu_star[0]) > Lst(spec.nu_star[0])) return false;
  return true;
}

QPoly gen_fn_mazy(const ModelData& M, int a, int b, int c, int L, const MazySpec& spec, int cap) {
  check_heights(M, a, b, L);
  check_c(M, b, c);
  check_cap(L, cap);
  std::map<long, long> counts;
  if (reachable(a, b, L)) {
    Walker w{M, a, b, L, {}, [&](const std::vector<int>& h, long acc) {
               if (mazy_compliant(Path{h}, spec, M.pp)) ++counts[acc + last_vertex(M, a, h, c)];
             }};
    w.run();
  }
  return from_counts(counts);
}

QPoly gen_fn_tilde_mazy(const ModelData& M, int a, int b, int /*e*/, int f, int L, const MazySpec& spec, int cap) {
  check_heights(M, a, b, L);
  check_cap(L, cap);
  std::map<long, long> counts;
  if (reachable(a, b, L)) {
    Walker w{M, a, b, L, {}, [&](const std::vector<int>& h, long acc) {
               if (mazy_compliant(Path{h}, spec, M.pp)) ++counts[acc + last_vertex_tilde(a, h, f)];
             }};
    w.run();
  }
  return from_counts(counts);
}

}  // namespace vir
