#include "support.hpp"
#include "virasoro/qalg.hpp"

#include <functional>
#include <random>

using namespace vir;

namespace {
QPoly poly(std::initializer_list<int> c) {
  std::vector<Coeff> v;
  for (int x : c) v.emplace_back(x);
  return finalize_integral(QPoly::from_dense(v));
}

// partitions fitting in a k x m box, counted by size
std::vector<Coeff> box_partitions(int k, int m) {
  std::vector<Coeff> out(static_cast<std::size_t>(k * m + 1));
  std::function<void(int, int, int)> go = [&](int parts_left, int max_part, int size) {
    out[static_cast<std::size_t>(size)] += 1;
    if (parts_left == 0) return;
    for (int x = 1; x <= max_part; ++x) go(parts_left - 1, x, size + x);
  };
  go(m, k, 0);
  return out;
}
}  // namespace

TEST_CASE("gaussian binomial small values") {
  CHECK(gaussian_binomial(5, 0) == poly({1}));
  CHECK(gaussian_binomial(3, 5).is_zero());
  CHECK(gaussian_binomial(4, 2) == poly({1, 1, 2, 1, 1}));
  CHECK(gaussian_binomial(-1, 0).is_zero());
  CHECK(gaussian_binomial(4, 2).integral());
}

TEST_CASE("half-argument binomial") {
  CHECK(gaussian_half_args(12, 1) == poly({1, 1, 1}));
  CHECK_THROWS_AS(gaussian_half_args(10, 1), NonIntegralArgument);
  CHECK(gaussian_half_args(0, 0) == poly({1}));
}

TEST_CASE("pochhammer inverse") {
  CHECK(pochhammer_inverse(0, 5) == QSeries::one(5));
  auto g = pochhammer_inverse(1, 4);
  for (int i = 0; i < 4; ++i) CHECK(g[i] == 1);
  auto p = pochhammer_inverse(kInfinity, 5);
  std::vector<int> want{1, 1, 2, 3, 5};
  for (int i = 0; i < 5; ++i) CHECK(p[i] == want[static_cast<std::size_t>(i)]);
}

TEST_CASE("finalize integral gate") {
  CHECK(finalize_integral(QPoly::monomial(4)) == poly({0, 1}));
  CHECK(finalize_integral(QPoly{}).is_zero());
  CHECK_THROWS_AS(finalize_integral(QPoly::monomial(1)), FractionalExponent);
}

TEST_CASE("binomial symmetry, pascal rules, inversion and box partitions") {
  for (int A = 0; A <= 10; ++A)
    for (int B = 0; B <= A; ++B) {
      CHECK(gaussian_binomial(A, B) == gaussian_binomial(A, A - B));
      if (A >= 1) {
        auto lhs = gaussian_binomial(A, B);
        auto r1 = gaussian_binomial(A - 1, B - 1).shifted(4 * (A - B)) + gaussian_binomial(A - 1, B);
        auto r2 = gaussian_binomial(A - 1, B - 1) + gaussian_binomial(A - 1, B).shifted(4 * B);
        CHECK(lhs == r1);
        CHECK(lhs == r2);
      }
      int m = B, k = A - B;
      CHECK(gaussian_binomial(A, B).inverted() == gaussian_binomial(A, B).shifted(-4 * m * k));
    }
  for (int k = 0; k <= 6; ++k)
    for (int m = 0; m <= 6; ++m)
      CHECK(gaussian_binomial(m + k, m) == finalize_integral(QPoly::from_dense(box_partitions(k, m))));
}

TEST_CASE("qpoly ring laws on random samples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5), ex(-8, 8);
  auto rnd = [&] {
    QPoly p;
    for (int i = 0; i < 5; ++i) p.add_term(ex(rng), coef(rng));
    return p;
  };
  for (int trial = 0; trial < 50; ++trial) {
    auto a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK(a + b == b + a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    auto ab = a * b;
    for (const auto& [e, x] : ab.terms()) CHECK(x != 0);
  }
}

TEST_CASE("series product keeps the order") {
  auto a = pochhammer_inverse(kInfinity, 12), b = pochhammer_inverse(3, 12);
  CHECK((a * b).order() == 12);
  QSeries prod = QSeries::one(12);
  std::vector<Coeff> v(prod.coeffs());
  for (int k = 1; k < 12; ++k) multiply_one_minus_qk(v, k, 12);
  QSeries euler(12);
  for (int i = 0; i < 12; ++i) euler[i] = v[static_cast<std::size_t>(i)];
  auto id = euler * a;
  CHECK(id == QSeries::one(12));
}
