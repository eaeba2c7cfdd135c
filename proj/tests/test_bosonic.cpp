#include "support.hpp"
#include "virasoro/bosonic.hpp"

using namespace vir;
using vir::testing::for_models;

namespace {

std::vector<long> head(const QSeries& s) {
  std::vector<long> out;
  for (int i = 0; i < s.order(); ++i) out.push_back(s[i].get_si());
  return out;
}

QPoly qhalf(long twice) { return QPoly::monomial(2 * twice); }  // q^{twice/2}


}  // namespace

TEST_CASE("bosonic character goldens") {
  auto M = build_model(2, 5);
  CHECK(head(character_bosonic(M, 1, 2, 11)) == std::vector<long>{1, 1, 1, 1, 2, 2, 3, 3, 4, 5, 6});
  auto one = character_bosonic(build_model(2, 3), 1, 1, 20);
  CHECK(one == QSeries::one(20));
  CHECK_THROWS_AS(character_bosonic(M, 0, 1, 5), OutOfRange);
  CHECK_THROWS_AS(character_bosonic(M, 1, 5, 5), OutOfRange);
}

TEST_CASE("bosonic character symmetry r,s -> p-r,p'-s") {
  for_models(12, [](const ModelData& M) {
    for (int r = 1; r < M.p; ++r)
      for (int s = 1; s < M.pp; ++s)
        CHECK(character_bosonic(M, r, s, 30) == character_bosonic(M, M.p - r, M.pp - s, 30));
  }, 2);
}

TEST_CASE("Rogers-Ramanujan products") {
  auto M = build_model(2, 5);
  CHECK(character_product(M, 1, 2, 61) == character_bosonic(M, 1, 2, 61));
  CHECK(character_product(M, 1, 1, 61) == character_bosonic(M, 1, 1, 61));
  CHECK_THROWS_AS(character_product(build_model(4, 7), 1, 1, 10), NotProductCase);
}

TEST_CASE("product families agree with the bosonic sum") {
  int cases = 0;
  for_models(12, [&](const ModelData& M) {
    for (int r = 1; r < M.p; ++r)
      for (int s = 1; s < M.pp; ++s)
        if (has_product_form(M, r, s)) {
          ++cases;
          CHECK(character_product(M, r, s, 41) == character_bosonic(M, r, s, 41));
        }
  }, 2);
  CHECK(cases > 50);
}

TEST_CASE("limit_r_of table") {
  auto W = build_model(3, 8);
  CHECK(limit_r_of(4, 3, W) == 2);
  CHECK(limit_r_of(1, 0, W) == 1);
  CHECK(limit_r_of(7, 8, W) == 2);
  auto N = build_model(5, 8);
  CHECK(limit_r_of(1, 0, N) == 0);
  CHECK(limit_r_of(7, 8, N) == 5);
  CHECK_THROWS_AS(limit_r_of(3, 5, W), OutOfRange);
}

TEST_CASE("finitized bosonic: exceptional and start values") {
  auto M = build_model(1, 2);
  for (int L = 0; L <= 10; L += 2) {
    QPoly want = L == 0 ? QPoly::constant(1) : QPoly();
    CHECK(finitized_bosonic(M, 1, 1, 0, L) == want);
    CHECK(finitized_bosonic(M, 1, 1, 2, L) == want);
  }
  for_models(10, [](const ModelData& M) {
    for (int a = 1; a < M.pp; ++a)
      for (int b = 1; b < M.pp; ++b)
        for (int c : {b - 1, b + 1}) {
          if ((a - b) % 2 != 0) continue;
          CHECK(finitized_bosonic(M, a, b, c, 0) == (a == b ? QPoly::constant(1) : QPoly()));
        }
  });
  CHECK_THROWS_AS(finitized_bosonic(build_model(3, 8), 2, 4, 3, 3), ParityMismatch);
  CHECK_THROWS_AS(finitized_bosonic(build_model(3, 8), 2, 4, 6, 2), OutOfRange);
}

// In the odd-band recurrences the straight vertex at L scores x = (L+a-b)/2
// going up and y = (L-a+b)/2 going down.
TEST_CASE("finitized bosonic satisfies the path recurrences") {
  for_models(10, [](const ModelData& M) {
    const int pp = M.pp;
    auto chi = [&](int a, int b, int c, int L) { return finitized_bosonic(M, a, b, c, L); };
    for (int a = 1; a < pp; ++a)
      for (int L = 1; L <= 12; ++L) {
        for (int b = 2; b <= pp - 2; ++b) {
          if ((L + a - b) % 2 != 0) continue;
          QPoly up = qhalf(L - a + b), down = qhalf(L + a - b);
          if (fl(M, b) == fl(M, b + 1))
            CHECK(chi(a, b, b + 1, L) == up * chi(a, b + 1, b, L - 1) + chi(a, b - 1, b, L - 1));
          else
            CHECK(chi(a, b, b + 1, L) == chi(a, b + 1, b, L - 1) + down * chi(a, b - 1, b, L - 1));
          if (fl(M, b) == fl(M, b - 1))
            CHECK(chi(a, b, b - 1, L) == down * chi(a, b - 1, b, L - 1) + chi(a, b + 1, b, L - 1));
          else
            CHECK(chi(a, b, b - 1, L) == chi(a, b - 1, b, L - 1) + up * chi(a, b + 1, b, L - 1));
        }
        if (pp >= 3 && (L + a - 1) % 2 == 0) {
          if (fl(M, 1) == fl(M, 2))
            CHECK(chi(a, 1, 2, L) == qhalf(L - a + 1) * chi(a, 2, 1, L - 1));
          else
            CHECK(chi(a, 1, 2, L) == chi(a, 2, 1, L - 1));
        }
        if (pp >= 3 && (L + a - pp + 1) % 2 == 0) {
          if (fl(M, pp - 1) == fl(M, pp - 2))
            CHECK(chi(a, pp - 1, pp - 2, L) == qhalf(L + a - pp + 1) * chi(a, pp - 2, pp - 1, L - 1));
          else
            CHECK(chi(a, pp - 1, pp - 2, L) == chi(a, pp - 2, pp - 1, L - 1));
        }
      }
  });
}

TEST_CASE("finitized bosonic at c = 0 and c = p'") {
  for_models(10, [](const ModelData& M) {
    if (M.pp < 3) return;
    const int pp = M.pp, sign = M.wide() ? -1 : 1;
    for (int a = 1; a < pp; ++a)
      for (int L = 0; L <= 12; ++L) {
        if ((L + a - 1) % 2 == 0)
          CHECK(finitized_bosonic(M, a, 1, 0, L) == qhalf(sign * (L + 1 - a)) * finitized_bosonic(M, a, 1, 2, L));
        if ((L + a - pp + 1) % 2 == 0)
          CHECK(finitized_bosonic(M, a, pp - 1, pp, L) ==
                qhalf(sign * (L - pp + 1 + a)) * finitized_bosonic(M, a, pp - 1, pp - 2, L));
      }
  });
}

TEST_CASE("finitized bosonic limit law") {
  for_models(9, [](const ModelData& M) {
    for (int a = 1; a < M.pp; ++a)
      for (int b = 1; b < M.pp; ++b)
        for (int c : {b - 1, b + 1}) {
          int r = limit_r_of(b, c, M);
          int L = 30 + ((a - b) % 2 != 0 ? 1 : 0);
          QSeries lo = QSeries::from_poly(finitized_bosonic(M, a, b, c, L), 11);
          QSeries hi = QSeries::from_poly(finitized_bosonic(M, a, b, c, L + 2), 11);
          CHECK(lo == hi);
          if (r == 0 || r == M.p)
            CHECK(lo == QSeries(11));
          else
            CHECK(lo == character_bosonic(M, r, a, 11));
        }
  });
}
