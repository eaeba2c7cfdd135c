#include "support.hpp"
#include "virasoro/bosonic.hpp"
#include "virasoro/paths.hpp"

using namespace vir;
using vir::testing::for_models;

namespace {

const Path kFig2{{2, 3, 4, 5, 4, 5, 6, 7, 6, 5, 6, 5, 4, 3, 4}};

}  // namespace

TEST_CASE("enumeration basics") {
  auto M = build_model(3, 8);
  CHECK(enumerate_paths(M, 2, 2, 0).size() == 1);
  CHECK(enumerate_paths(M, 2, 4, 2) == std::vector<Path>{Path{{2, 3, 4}}});
  CHECK(enumerate_paths(M, 2, 4, 3).empty());
  auto all = enumerate_paths(M, 2, 4, 6);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].h < all[i].h);
  CHECK_THROWS_AS(enumerate_paths(M, 0, 4, 2), OutOfRange);
}

TEST_CASE("worked weight of the (3,8) example path") {
  auto M = build_model(3, 8);
  CHECK(weight(M, kFig2, 3) == 24);
  CHECK(weight(M, Path{{4}}, 3) == 0);
  CHECK(gen_fn(M, 2, 4, 3, 14).at(24) >= 1);
  for (int e : {0, 1}) {
    auto s = striking(M, kFig2, e, 1);
    CHECK(s.a == std::vector<long>{2, 0, 1, 1, 1, 2, 0});
    CHECK(s.b == std::vector<long>{1, 1, 2, 1, 0, 1, 1});
    CHECK(s.d == 0);
    CHECK(s.pi == 1);
    CHECK(s.m() == 8 - e);
    CHECK(s.alpha() == 2);
    CHECK(s.beta() == 2 - e);
    CHECK(path_from_striking(2, s) == kFig2);
  }
}

TEST_CASE("exceptional (1,2) generating function") {
  auto M = build_model(1, 2);
  for (int L = 0; L <= 8; L += 2) {
    QPoly want = L == 0 ? QPoly::constant(1) : QPoly();
    CHECK(gen_fn(M, 1, 1, 0, L) == want);
    CHECK(gen_fn(M, 1, 1, 2, L) == want);
  }
}

TEST_CASE("seed generating functions in the (1,3)-model") {
  auto M = build_model(1, 3);
  for (int L = 0; L <= 14; ++L) {
    if (L % 2 == 0) {
      QPoly want = QPoly::monomial(L * L);
      CHECK(gen_fn_tilde(M, 1, 1, 0, 0, L, 0) == want);
      CHECK(gen_fn_tilde(M, 2, 2, 1, 1, L, 0) == want);
      CHECK(gen_fn_tilde(M, 1, 1, 0, 0, L, 1).is_zero());
    } else {
      QPoly want = QPoly::monomial(L * L - 1);
      CHECK(gen_fn_tilde(M, 1, 2, 0, 1, L, 0) == want);
      CHECK(gen_fn_tilde(M, 2, 1, 1, 0, L, 0) == want);
    }
  }
}

TEST_CASE("weight via striking, path parameters and m parity") {
  for_models(8, [](const ModelData& M) {
    for (int a = 1; a < M.pp; ++a)
      for (int b = 1; b < M.pp; ++b)
        for (int L = 0; L <= 10; ++L)
          for_each_path(M, a, b, L, [&](const Path& h) {
            for (int e : {0, 1})
              for (int f : {0, 1}) {
                auto s = striking(M, h, e, f);
                long sum = 0;
                for (std::size_t i = 0; i < s.a.size(); ++i) sum += s.w(i);
                REQUIRE(sum == L);
                CHECK(weight_tilde(M, h, e, f) == weight_via_striking(s));
                CHECK(s.alpha() == alpha_ab(a, b));
                CHECK(s.beta() == beta_abef(M, a, b, e, f));
                CHECK((s.m() + L + s.beta()) % 2 == 0);
                if (L > 0) CHECK(path_from_striking(a, s) == h);
              }
          });
  });
}

TEST_CASE("winged weight equals original weight when the post-segment band is even") {
  for_models(8, [](const ModelData& M) {
    for (int a = 1; a < M.pp; ++a)
      for (int b = 1; b < M.pp; ++b)
        for (int f : {0, 1}) {
          int c = b + (f == 0 ? 1 : -1);
          if (band_parity(M, std::min(b, c)) != Parity::even) continue;
          for (int L = 0; L <= 8; ++L)
            for_each_path(M, a, b, L, [&](const Path& h) { CHECK(weight_tilde(M, h, 0, f) == weight(M, h, c)); });
        }
  });
}

TEST_CASE("dual model weights add to (L^2 - alpha^2)/4") {
  for_models(8, [](const ModelData& M) {
    auto D = build_model(M.pp - M.p, M.pp);
    for (int a = 1; a < M.pp; ++a)
      for (int b = 1; b < M.pp; ++b)
        for (int c : {b - 1, b + 1})
          for (int L = 0; L <= 8; ++L)
            for_each_path(M, a, b, L, [&](const Path& h) {
              CHECK(4 * (weight(M, h, c) + weight(D, h, c)) == L * L - (b - a) * (b - a));
            });
  }, 1);
}

TEST_CASE("path generating function equals the bosonic form") {
  for_models(9, [](const ModelData& M) {
    for (int a = 1; a < M.pp; ++a)
      for (int b = 1; b < M.pp; ++b)
        for (int c : {b - 1, b + 1})
          for (int L = (a - b + 20) % 2; L <= 12; L += 2) CHECK(gen_fn(M, a, b, c, L) == finitized_bosonic(M, a, b, c, L));
  });
}

TEST_CASE("gen_fn guards") {
  auto M = build_model(3, 8);
  CHECK_THROWS_AS(gen_fn(M, 2, 4, 3, 20), CapExceeded);
  CHECK_NOTHROW(gen_fn(M, 2, 4, 3, 20, 20));
  CHECK_THROWS_AS(gen_fn(M, 2, 4, 6, 2), OutOfRange);
}

TEST_CASE("unconstrained mazy spec reproduces gen_fn") {
  auto M = build_model(3, 8);
  MazySpec none;
  CHECK(gen_fn_mazy(M, 2, 4, 3, 10, none) == gen_fn(M, 2, 4, 3, 10));
  MazySpec impossible{{4}, {0}, {}, {}};
  CHECK(gen_fn_mazy(M, 2, 4, 3, 10, impossible).is_zero());
}

TEST_CASE("mazy compliance conditions") {
  Path h{{3, 2, 3, 4, 5, 4}};
  CHECK(mazy_compliant(h, {{5}, {2}, {}, {}}, 8));    // 2 before 5
  CHECK(!mazy_compliant(h, {{2}, {5}, {}, {}}, 8));   // 2 reached first
  CHECK(mazy_compliant(h, {{}, {}, {2}, {5}}, 8));    // last 5 after last 2
  CHECK(!mazy_compliant(h, {{}, {}, {5}, {2}}, 8));
  CHECK(!mazy_compliant(h, {{6}, {5}, {1}, {2}}, 8)); // first 5 is after last 2
  CHECK(mazy_compliant(h, {{1}, {2}, {6}, {5}}, 8));
}

TEST_CASE("mazy specs from leaf runs are interfacial mazy pairs") {
  for_models(12, [](const ModelData& M) {
    for (int a = 1; a < M.pp; ++a)
      for (const auto& u : u_set(M, a)) {
        auto [mu, mu_star] = mazy_pair(M, u.run);
        for (std::size_t j = 0; j < mu.size(); ++j) {
          CHECK(mu[j] != mu_star[j]);
          CHECK(is_interfacial(M, mu[j]));
          CHECK(is_interfacial(M, mu_star[j]));
          CHECK(std::min(mu[j], mu_star[j]) >= 0);
          CHECK(std::max(mu[j], mu_star[j]) <= M.pp);
        }
        if (!mu.empty()) {
          const int x = mu.back(), y = mu_star.back();
          CHECK(std::min(x, y) < a);
          CHECK(a < std::max(x, y));
        }
        for (std::size_t j = 0; j + 1 < mu.size(); ++j) {
          const int lo = std::min(mu[j], mu_star[j]), hi = std::max(mu[j], mu_star[j]);
          CHECK(lo <= mu[j + 1]);
          CHECK(mu[j + 1] <= hi);
          CHECK(lo <= mu_star[j + 1]);
          CHECK(mu_star[j + 1] <= hi);
        }
      }
  }, 2);
}
